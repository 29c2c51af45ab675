/*
 * netload-uq C API.
 *
 * Net-load uncertainty quantification under configurable EV-charging and
 * PV-generation penetration: profile handling, the metric families, scenario
 * sweeps, variance-based sensitivity and EV/PV interaction studies.
 *
 * All functions return NLUQ_OK on success. On failure the thread-local
 * message from nluq_last_error() describes what went wrong. Objects returned
 * through out-parameters are owned by the caller and released with the
 * matching *_free function.
 */
#ifndef NETLOAD_UQ_H
#define NETLOAD_UQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NLUQ_API __declspec(dllexport)
#else
#define NLUQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nluq_status {
    NLUQ_OK = 0,
    NLUQ_ERR_INVALID_ARGUMENT = 1,
    NLUQ_ERR_PARSE = 2,            /* malformed CSV/JSON/timestamp */
    NLUQ_ERR_IO = 3,               /* missing or unreadable file */
    NLUQ_ERR_EMPTY_INPUT = 4,      /* empty series or no full day */
    NLUQ_ERR_RESOLUTION = 5,       /* incompatible sampling intervals */
    NLUQ_ERR_MISMATCH = 6,         /* misaligned series or partitions */
    NLUQ_ERR_UNDEFINED_METRIC = 7, /* strict KLD pathology, degenerate moments */
    NLUQ_ERR_DEGENERATE = 8,       /* zero variance / near-zero denominator */
    NLUQ_ERR_CONFIG = 9,           /* config schema violation */
    NLUQ_ERR_INTERNAL = 10
} nluq_status;

/* Opaque, uniformly sampled power series in kW. */
typedef struct nluq_profile nluq_profile;

NLUQ_API const char* nluq_version(void);

/* Message for the most recent failure on this thread; empty string if none.
 * Valid until the next failing call on the same thread. */
NLUQ_API const char* nluq_last_error(void);

/* ---- profiles ---------------------------------------------------------- */

/* start_iso8601: "YYYY-MM-DDTHH:MM[:SS]" local time; NULL means midnight
 * 2022-01-01. */
NLUQ_API nluq_status nluq_profile_create(const double* values_kw, size_t count, double dt_hours,
                                         const char* start_iso8601, nluq_profile** out);

/* Loads a `timestamp,power_kw` CSV with strictly uniform spacing. */
NLUQ_API nluq_status nluq_profile_load_csv(const char* path, nluq_profile** out);

NLUQ_API void nluq_profile_free(nluq_profile* profile);

NLUQ_API size_t nluq_profile_count(const nluq_profile* profile);
NLUQ_API double nluq_profile_dt_hours(const nluq_profile* profile);

/* Copies all samples into out (capacity must be >= nluq_profile_count). */
NLUQ_API nluq_status nluq_profile_values(const nluq_profile* profile, double* out, size_t capacity);

/* Block-mean downsampling to an integer multiple of the current interval. */
NLUQ_API nluq_status nluq_profile_resample(const nluq_profile* profile, double new_dt_hours,
                                           nluq_profile** out);

/* ---- metrics ------------------------------------------------------------ */

/* options_json (may be NULL): {"bins":{"shared":50,"per_day":0},
 * "kld":{"smoothing":false,"epsilon":1e-9}}. Results are JSON documents owned
 * by the caller; free with nluq_string_free. Baseline-free metrics only. */
NLUQ_API nluq_status nluq_basefree_metrics_json(const nluq_profile* profile,
                                                const char* options_json, char** out_json);

/* Full report for a net profile against its base: baseline-free metrics of
 * the net plus distribution distances and error metrics versus the base. */
NLUQ_API nluq_status nluq_relative_metrics_json(const nluq_profile* base, const nluq_profile* net,
                                                const char* options_json, char** out_json);

NLUQ_API void nluq_string_free(char* text);

/* ---- pipeline runs ------------------------------------------------------ */

typedef struct nluq_run_options {
    const char* out_dir;  /* overrides config output.dir when non-NULL */
    const uint64_t* seed; /* overrides config seeds.master when non-NULL */
    int threads;          /* overrides config threads when > 0 */
} nluq_run_options;

/* Executes one pipeline command ("metrics", "sweep", "sensitivity",
 * "interaction", "resample") against a config file, writing JSON/CSV outputs
 * to the output directory. Mirrors the CLI subcommands. options may be NULL. */
NLUQ_API nluq_status nluq_run(const char* command, const char* config_path,
                              const nluq_run_options* options);

#ifdef __cplusplus
}
#endif

#endif /* NETLOAD_UQ_H */
