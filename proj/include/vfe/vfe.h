/* C interface to the vfe library: endomorphisms of virtually free groups. */
#ifndef VFE_VFE_H
#define VFE_VFE_H

#include <stddef.h>

#if defined(VFE_BUILDING)
#define VFE_API __attribute__((visibility("default")))
#else
#define VFE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vfe_status {
  VFE_OK = 0,
  VFE_ERR_INPUT = 1,    /* malformed or invalid input */
  VFE_UNKNOWN = 2,      /* verdict depends on a bounded Fix computation */
  VFE_ERR_RESOURCE = 3, /* a length or enumeration guard was hit */
  VFE_ERR_ARGUMENT = 4, /* bad argument: unknown endomorphism, null pointer, ... */
  VFE_ERR_INTERNAL = 5
} vfe_status;

typedef enum vfe_format { VFE_FORMAT_TEXT = 0, VFE_FORMAT_STRUCTURED = 1 } vfe_format;

typedef struct vfe_options {
  unsigned length_bound;     /* Fix enumeration length, >= 1 (default 12) */
  unsigned long node_budget; /* Fix enumeration work: nodes plus image letters */
  unsigned long cap;         /* orbit cap; 0 means c_phi */
  int trust_oracle;          /* treat a bounded Fix as complete */
  int trace;                 /* add certificate traces to reports */
} vfe_options;

typedef struct vfe_group vfe_group;
typedef struct vfe_report vfe_report;

VFE_API void vfe_options_init(vfe_options* opts);
VFE_API const char* vfe_version(void);
/* Message for the last failing call on this thread; "" if none. */
VFE_API const char* vfe_last_error(void);

VFE_API vfe_status vfe_group_load_file(const char* path, vfe_group** out);
VFE_API vfe_status vfe_group_load_text(const char* text, vfe_group** out);
VFE_API void vfe_group_free(vfe_group* g);
VFE_API size_t vfe_group_endo_count(const vfe_group* g);
VFE_API const char* vfe_group_endo_name(const vfe_group* g, size_t i);
/* Presentation and endomorphisms in the input file format. */
VFE_API const char* vfe_group_serialize(const vfe_group* g);

/* Commands. Each stores a report in *out on VFE_OK and VFE_UNKNOWN. */
VFE_API vfe_status vfe_validate(const vfe_group* g, vfe_report** out);
VFE_API vfe_status vfe_invariant(const vfe_group* g, const vfe_options* opts, vfe_report** out);
VFE_API vfe_status vfe_fix(const vfe_group* g, const char* endo, const vfe_options* opts,
                           vfe_report** out);
VFE_API vfe_status vfe_orbit(const vfe_group* g, const char* endo, const char* element,
                             const vfe_options* opts, vfe_report** out);
VFE_API vfe_status vfe_cphi(const vfe_group* g, const char* endo, const vfe_options* opts,
                            vfe_report** out);
VFE_API vfe_status vfe_finite_order(const vfe_group* g, const char* endo,
                                    const vfe_options* opts, vfe_report** out);
VFE_API vfe_status vfe_stabilizes(const vfe_group* g, const char* endo, const vfe_options* opts,
                                  vfe_report** out);
VFE_API vfe_status vfe_kernel_member(const vfe_group* g, const char* endo, const char* element,
                                     const vfe_options* opts, vfe_report** out);
VFE_API vfe_status vfe_evfix_member(const vfe_group* g, const char* endo, const char* element,
                                    const vfe_options* opts, vfe_report** out);
VFE_API vfe_status vfe_evfix_fg(const vfe_group* g, const char* endo, const vfe_options* opts,
                                vfe_report** out);
/* Like vfe_evfix_fg, plus a reduced generating set and its free part. */
VFE_API vfe_status vfe_evfix_gens(const vfe_group* g, const char* endo, const vfe_options* opts,
                                  vfe_report** out);
VFE_API vfe_status vfe_evper_fg(const vfe_group* g, const char* endo, const vfe_options* opts,
                                vfe_report** out);
/* Free groups only. */
VFE_API vfe_status vfe_normal(const vfe_group* g, const char* endo, const vfe_options* opts,
                              vfe_report** out);
VFE_API vfe_status vfe_rank_bound(const vfe_group* g, const vfe_options* opts, vfe_report** out);
VFE_API vfe_status vfe_aut_order_bound(unsigned long n, vfe_report** out);

VFE_API void vfe_report_free(vfe_report* r);
VFE_API size_t vfe_report_size(const vfe_report* r);
VFE_API const char* vfe_report_key(const vfe_report* r, size_t i);
VFE_API const char* vfe_report_value(const vfe_report* r, size_t i);
/* Value for key, or NULL. */
VFE_API const char* vfe_report_get(const vfe_report* r, const char* key);
/* Rendered document; the string lives as long as the report. */
VFE_API const char* vfe_report_render(vfe_report* r, vfe_format format);

#ifdef __cplusplus
}
#endif

#endif
