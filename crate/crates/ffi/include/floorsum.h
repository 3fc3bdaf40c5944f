#ifndef FLOORSUM_H
#define FLOORSUM_H

#include <stddef.h>
#include <stdint.h>

typedef enum FsStatus {
  FS_STATUS_OK = 0,
  FS_STATUS_NULL_POINTER = 1,
  FS_STATUS_INVALID_ARGUMENT = 2,
  FS_STATUS_PARSE = 3,
  FS_STATUS_OVERFLOW = 4,
  FS_STATUS_UNKNOWN_CLAIM = 5,
  FS_STATUS_CHECKPOINT_CORRUPT = 6,
  FS_STATUS_IO = 7,
  FS_STATUS_SEARCH_EXHAUSTED = 8,
  /*
   A panic was caught at the boundary.
   */
  FS_STATUS_INTERNAL = 9,
} FsStatus;

typedef enum FsRounding {
  FS_ROUNDING_FLOOR = 0,
  FS_ROUNDING_CEIL = 1,
  FS_ROUNDING_EXACT = 2,
} FsRounding;

typedef enum FsVerdict {
  FS_VERDICT_CONFIRMED = 0,
  FS_VERDICT_EVIDENCE_ONLY = 1,
  FS_VERDICT_REFUTED = 2,
} FsVerdict;

/*
 Result of a catalog claim run.
 */
typedef struct FsClaimReport FsClaimReport;

/*
 A sieved prime table.
 */
typedef struct FsPrimeTable FsPrimeTable;

/*
 Result of a coverage scan.
 */
typedef struct FsScan FsScan;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failure on this thread, or null. The pointer stays
 valid until the next failing call on the same thread.
 */
const char *fs_last_error(void);

/*
 Releases a string returned by this library.

 # Safety
 `s` must come from this library and not have been freed.
 */
void fs_string_free(char *s);

/*
 The m-gonal number `((m-2)x^2 - (m-4)x)/2`.

 # Safety
 `result` must be valid for writes.
 */
enum FsStatus fs_polygonal_value(int64_t m, int64_t x, int64_t *result);

/*
 Number of integer solutions of `ax^2+by^2+cz^2 = n`.

 # Safety
 `result` must be valid for writes.
 */
enum FsStatus fs_rep_count(int64_t a, int64_t b, int64_t c, int64_t n, uint64_t *result);

/*
 The H-function of the form at positive `n`.

 # Safety
 `result` must be valid for writes.
 */
enum FsStatus fs_h_value(int64_t a, int64_t b, int64_t c, int64_t n, int64_t *result);

/*
 Closed-form count of `x^2+y^2+z^2 = n^2`.

 # Safety
 `result` must be valid for writes.
 */
enum FsStatus fs_hurwitz_sphere_count(int64_t n, int64_t *result);

/*
 Closed-form count of `x^2+y^2+2z^2 = n^2`.

 # Safety
 `result` must be valid for writes.
 */
enum FsStatus fs_cooper_lam_count(int64_t n, int64_t *result);

/*
 Closed-form count of `x^2+y^2+5z^2 = n^2`.

 # Safety
 `result` must be valid for writes.
 */
enum FsStatus fs_gpq_count(int64_t n, int64_t *result);

/*
 Sets `result` to 1 when `n` is in the catalogued exceptional set of the
 form, 0 otherwise.

 # Safety
 `result` must be valid for writes.
 */
enum FsStatus fs_dickson_exceptional(int64_t a, int64_t b, int64_t c, int64_t n, int32_t *result);

/*
 `4^(k+2) q - 2(4^k+2)/3`, the values missed by `p8+p8+2p8`.

 # Safety
 `result` must be valid for writes.
 */
enum FsStatus fs_excluded_set_member(uint32_t k, int64_t q, int64_t *result);

/*
 Parses `expr` and scans `[lo, hi]`. Bare fractions use `rounding`.

 # Safety
 `expr` must be a nul-terminated string; `scan` must be valid for writes.
 */
enum FsStatus fs_scan_new(const char *expr,
                          enum FsRounding rounding,
                          int64_t lo,
                          int64_t hi,
                          struct FsScan **scan);

/*
 # Safety
 `scan` must come from [`fs_scan_new`] and not have been freed.
 */
void fs_scan_free(struct FsScan *scan);

/*
 # Safety
 `scan` must be a live handle and `result` valid for writes.
 */
enum FsStatus fs_scan_gap_count(const struct FsScan *scan, size_t *result);

/*
 Copies up to `capacity` gaps, ascending, into `buffer` and stores the
 number copied in `written`.

 # Safety
 `buffer` must hold `capacity` elements; the other pointers must be valid.
 */
enum FsStatus fs_scan_gaps(const struct FsScan *scan,
                           int64_t *buffer,
                           size_t capacity,
                           size_t *written);

/*
 Sets `result` to 1 when `n` is representable, 0 otherwise.

 # Safety
 `scan` must be a live handle and `result` valid for writes.
 */
enum FsStatus fs_scan_is_representable(const struct FsScan *scan, int64_t n, int32_t *result);

/*
 Runs catalog claim `id`. A `bound` of 0 uses the claim's default and a
 `jobs` of 0 uses every core.

 # Safety
 `id` must be a nul-terminated string; `report` must be valid for writes.
 */
enum FsStatus fs_claim_run(const char *id,
                           int64_t bound,
                           size_t jobs,
                           struct FsClaimReport **report);

/*
 # Safety
 `report` must come from [`fs_claim_run`] and not have been freed.
 */
void fs_claim_report_free(struct FsClaimReport *report);

/*
 # Safety
 `report` must be a live handle and `result` valid for writes.
 */
enum FsStatus fs_claim_report_verdict(const struct FsClaimReport *report, enum FsVerdict *result);

/*
 Sets `result` to 1 when the claim produced its expected outcome.

 # Safety
 `report` must be a live handle and `result` valid for writes.
 */
enum FsStatus fs_claim_report_expectation_met(const struct FsClaimReport *report, int32_t *result);

/*
 Distinct gaps pooled over all cases.

 # Safety
 `report` must be a live handle and `result` valid for writes.
 */
enum FsStatus fs_claim_report_gap_count(const struct FsClaimReport *report, size_t *result);

/*
 The JSON report document. Release it with [`fs_string_free`].

 # Safety
 `report` must be a live handle and `json` valid for writes.
 */
enum FsStatus fs_claim_report_json(const struct FsClaimReport *report, char **json);

/*
 Sieves the primes up to `limit`.

 # Safety
 `table` must be valid for writes.
 */
enum FsStatus fs_prime_table_new(int64_t limit, struct FsPrimeTable **table);

/*
 # Safety
 `table` must come from [`fs_prime_table_new`] and not have been freed.
 */
void fs_prime_table_free(struct FsPrimeTable *table);

/*
 Number of primes in the table.

 # Safety
 `table` must be a live handle and `result` valid for writes.
 */
enum FsStatus fs_prime_table_count(const struct FsPrimeTable *table, size_t *result);

/*
 Sets `result` to 1 when `n` is prime. `n` must not exceed the limit.

 # Safety
 `table` must be a live handle and `result` valid for writes.
 */
enum FsStatus fs_prime_table_is_prime(const struct FsPrimeTable *table, int64_t n, int32_t *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FLOORSUM_H */
