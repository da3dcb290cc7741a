#ifndef CHAOSCRYPT_CHAOSCRYPT_H
#define CHAOSCRYPT_CHAOSCRYPT_H

/*
 * C interface to the chaoscrypt toolkit: chaotic bit generators, the
 * statistical battery, and the XOR image cipher.
 *
 * Every fallible call returns a cc_status. On failure the message for the
 * calling thread is available from cc_last_error() until the next call that
 * fails on that thread. Objects are opaque and released with their *_free
 * function; strings returned through char** are released with cc_string_free.
 * Handles are not synchronized: share one across threads only for reading.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(CHAOSCRYPT_BUILDING_LIBRARY)
#define CC_API __attribute__((visibility("default")))
#else
#define CC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cc_status {
    CC_OK = 0,
    CC_ERR_CONTRACT = 1,     /* invalid argument or broken precondition */
    CC_ERR_DIVERGENCE = 2,   /* orbit left the bounded region or became non-finite */
    CC_ERR_PARSE = 3,        /* malformed key text or hex seed */
    CC_ERR_LENGTH = 4,       /* sequence too short or too long for the operation */
    CC_ERR_KEY_REJECTED = 5, /* seed could not be turned into a valid generator */
    CC_ERR_IO = 6,
    CC_ERR_FORMAT = 7,       /* malformed image, envelope or bit file */
    CC_ERR_NOT_APPLICABLE = 8,
    CC_ERR_INTERNAL = 99
} cc_status;

typedef enum cc_kind {
    CC_KIND_CHUA = 0,
    CC_KIND_LORENZ = 1,
    CC_KIND_ROSSLER = 2,
    CC_KIND_HENON = 3,
    CC_KIND_LOGISTIC = 4,
    CC_KIND_HYBRID_HENON = 5,
    CC_KIND_HYBRID_LOGISTIC = 6
} cc_kind;

typedef enum cc_verdict { CC_PASS = 0, CC_FAIL = 1, CC_NOT_APPLICABLE = 2 } cc_verdict;

typedef struct cc_key cc_key;
typedef struct cc_bits cc_bits;
typedef struct cc_report cc_report;
typedef struct cc_image cc_image;
typedef struct cc_envelope cc_envelope;
typedef struct cc_matrix cc_matrix;

CC_API const char* cc_version(void);
CC_API const char* cc_last_error(void);
CC_API const char* cc_status_name(cc_status status);
CC_API void cc_string_free(char* s);

CC_API const char* cc_kind_name(cc_kind kind);
CC_API cc_status cc_kind_from_name(const char* name, cc_kind* out);

/* Keys */
CC_API cc_status cc_key_from_hex(const char* hex_seed, cc_kind kind, cc_key** out);
CC_API cc_status cc_key_parse(const char* text, cc_key** out);
CC_API cc_status cc_key_load(const char* path, cc_key** out);
CC_API cc_status cc_key_save(const cc_key* key, const char* path);
CC_API cc_status cc_key_serialize(const cc_key* key, char** out);
CC_API cc_kind cc_key_kind(const cc_key* key);
CC_API uint64_t cc_key_transient(const cc_key* key);
CC_API uint64_t cc_key_bits(const cc_key* key);
CC_API cc_status cc_key_set_transient(cc_key* key, uint64_t transient);
CC_API cc_status cc_key_set_bits(cc_key* key, uint64_t n_bits);
CC_API cc_status cc_key_set_dt(cc_key* key, double dt);
CC_API void cc_key_free(cc_key* key);

/* Bit sequences, packed MSB-first */
CC_API cc_status cc_generate(const cc_key* key, cc_bits** out);
CC_API cc_status cc_bits_from_packed(const uint8_t* bytes, size_t n_bytes, uint64_t n_bits, cc_bits** out);
CC_API cc_status cc_bits_load(const char* path, cc_bits** out);
/* Writes the packed file and its `.meta` sidecar. */
CC_API cc_status cc_bits_save(const cc_bits* bits, const char* path, const char* kind, uint64_t transient);
CC_API uint64_t cc_bits_length(const cc_bits* bits);
CC_API const uint8_t* cc_bits_data(const cc_bits* bits, size_t* n_bytes);
/* Kind recorded in the sidecar of a loaded file, or "" when unknown. */
CC_API const char* cc_bits_kind(const cc_bits* bits);
CC_API cc_status cc_bits_hamming(const cc_bits* a, const cc_bits* b, uint64_t* out);
CC_API void cc_bits_free(cc_bits* bits);

/* Statistical battery */
CC_API cc_status cc_run_suite(const cc_bits* bits, double alpha, const char* label, cc_report** out);
CC_API int cc_report_pass_count(const cc_report* report);
CC_API int cc_report_applicable_count(const cc_report* report);
CC_API int cc_report_test_count(const cc_report* report);
CC_API const char* cc_report_test_name(const cc_report* report, int index);
CC_API cc_verdict cc_report_test_verdict(const cc_report* report, int index);
CC_API int cc_report_test_p_count(const cc_report* report, int index);
CC_API double cc_report_test_p(const cc_report* report, int index, int p_index);
CC_API cc_status cc_report_text(const cc_report* report, char** out);
CC_API cc_status cc_report_json(const cc_report* report, char** out);
CC_API void cc_report_free(cc_report* report);

/* Images */
CC_API cc_status cc_image_new(uint32_t width, uint32_t height, uint8_t channels, const uint8_t* data,
                              cc_image** out);
CC_API cc_status cc_image_load(const char* path, cc_image** out);
CC_API cc_status cc_image_load_raw(const char* path, uint32_t width, uint32_t height, uint8_t channels,
                                   cc_image** out);
CC_API cc_status cc_image_save(const cc_image* image, const char* path);
CC_API uint32_t cc_image_width(const cc_image* image);
CC_API uint32_t cc_image_height(const cc_image* image);
CC_API uint8_t cc_image_channels(const cc_image* image);
CC_API const uint8_t* cc_image_data(const cc_image* image, size_t* n_bytes);
CC_API void cc_image_free(cc_image* image);

/* Cipher */
CC_API cc_status cc_encrypt(const cc_image* image, const cc_key* key, cc_envelope** out);
CC_API cc_status cc_decrypt(const cc_envelope* envelope, const cc_key* key, cc_image** out);
CC_API cc_status cc_envelope_load(const char* path, cc_envelope** out);
CC_API cc_status cc_envelope_save(const cc_envelope* envelope, const char* path);
CC_API cc_kind cc_envelope_kind(const cc_envelope* envelope);
CC_API const uint8_t* cc_envelope_ciphertext(const cc_envelope* envelope, size_t* n_bytes);
CC_API void cc_envelope_free(cc_envelope* envelope);

/* Histogram analysis */
CC_API cc_status cc_histogram(const uint8_t* data, size_t n, uint64_t counts[256]);
CC_API cc_status cc_chi_square_uniformity(const uint64_t counts[256], double* chi2, double* p_value);

/* Generator comparison sweep. Seeds are 64-hex-digit strings; threads 0
 * uses every core. */
CC_API cc_status cc_expand_seeds(uint64_t base, size_t count, char** seeds_newline_separated);
CC_API cc_status cc_compare(const cc_kind* kinds, size_t n_kinds, const char* const* seeds, size_t n_seeds,
                            uint64_t n_bits, double alpha, unsigned threads, cc_matrix** out);
CC_API int cc_matrix_passes(const cc_matrix* matrix, size_t kind_index, size_t seed_index);
CC_API double cc_matrix_mean(const cc_matrix* matrix, size_t kind_index);
CC_API cc_status cc_matrix_text(const cc_matrix* matrix, char** out);
CC_API void cc_matrix_free(cc_matrix* matrix);

#ifdef __cplusplus
}
#endif

#endif
