#ifndef PREPROJ_H
#define PREPROJ_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define PREPROJ_API __attribute__((visibility("default")))
#else
#define PREPROJ_API
#endif

typedef struct preproj_engine preproj_engine;

typedef enum {
    PREPROJ_OK = 0,
    PREPROJ_ERR_INVALID_ARGUMENT = 1,
    PREPROJ_ERR_CHAR2 = 2,
    PREPROJ_ERR_BUDGET = 3,
    PREPROJ_ERR_UNSUPPORTED = 4,
    PREPROJ_ERR_INTERNAL = 5
} preproj_status;

typedef struct {
    int oracle_upto;   /* -1 automatic, -2 skip */
    uint64_t budget;   /* bar complex size bound */
} preproj_run_options;

PREPROJ_API const char* preproj_version(void);
/* message for the last failing call on this thread; never NULL */
PREPROJ_API const char* preproj_last_error(void);
/* every char* handed out by the library is released with this */
PREPROJ_API void preproj_string_free(char* s);

/* characteristic 0 means the rationals; maxdeg bounds the cochain window (>= 7) */
PREPROJ_API int preproj_engine_create(int n, uint32_t characteristic, int maxdeg, preproj_engine** out);
PREPROJ_API void preproj_engine_destroy(preproj_engine* e);

/* JSON sections */
PREPROJ_API int preproj_algebra_json(preproj_engine* e, char** out);
PREPROJ_API int preproj_dims_json(preproj_engine* e, char** out);
PREPROJ_API int preproj_cmatrix_json(preproj_engine* e, char** out);
PREPROJ_API int preproj_products_json(preproj_engine* e, char** out);
/* presentation and stable checks; *pass receives 1 or 0 */
PREPROJ_API int preproj_verify_json(preproj_engine* e, char** out, int* pass);
/* perturb_degree < 0 disables the negative control */
PREPROJ_API int preproj_oracle_json(preproj_engine* e, int upto, uint64_t budget, int perturb_degree, char** out,
                                    int* pass);
PREPROJ_API int preproj_certificate_json(preproj_engine* e, const preproj_run_options* opt, char** out, int* pass);

/* format: "json", "markdown" or "csv"; csv_header toggles the column line */
PREPROJ_API int preproj_render(const char* certificate_json, const char* format, int csv_header, char** out);

#ifdef __cplusplus
}
#endif

#endif
