/*
 * Copyright 2026 The drmlab Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libdrmlab.
 *
 * Every function returns a drm_status. On failure, drm_last_error() returns
 * a message describing the most recent error on the calling thread; the
 * pointer stays valid until the next failing call on that thread.
 *
 * Strings returned through `char** out` parameters are heap allocated and
 * must be released with drm_free(). Handles are released with their
 * matching *_free function; passing NULL to any *_free is a no-op.
 */

#ifndef DRMLAB_DRMLAB_H
#define DRMLAB_DRMLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DRM_API __declspec(dllexport)
#else
#define DRM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum drm_status {
  DRM_OK = 0,
  DRM_ERR_PARSE = 1,
  DRM_ERR_VALIDATION = 2,
  DRM_ERR_MISSING_STATE = 3,
  DRM_ERR_DUPLICATE_ID = 4,
  DRM_ERR_NOT_PERMITTED = 5,
  DRM_ERR_UNDEFINED_RIGHT = 6,
  DRM_ERR_EMPTY_CANDIDATES = 7,
  DRM_ERR_CAP_EXCEEDED = 8,
  DRM_ERR_BOUNDS_TOO_LARGE = 9,
  DRM_ERR_INVALID_ARGUMENT = 10,
  DRM_ERR_INTERNAL = 11
} drm_status;

typedef struct drm_config drm_config;
typedef struct drm_license_set drm_license_set;
typedef struct drm_agent drm_agent;

DRM_API const char* drm_last_error(void);
DRM_API const char* drm_status_name(drm_status status);
DRM_API void drm_free(char* str);

/* Configuration. Keys and file format as documented in README.md. */
DRM_API drm_status drm_config_new(drm_config** out);
DRM_API void drm_config_free(drm_config* config);
/* Merges `key = value` lines; `source` prefixes error messages. */
DRM_API drm_status drm_config_load(drm_config* config, const char* text,
                                   const char* source);
DRM_API drm_status drm_config_set(drm_config* config, const char* key,
                                  const char* value);
DRM_API drm_status drm_config_get(const drm_config* config, const char* key,
                                  char** out);

/* Validates one license document and returns its canonical serialization. */
DRM_API drm_status drm_license_canonical(const char* json, char** out);

/* An ordered collection of licenses with unique ids. */
DRM_API drm_status drm_license_set_new(drm_license_set** out);
DRM_API void drm_license_set_free(drm_license_set* set);
/* `source` (a file name, say) prefixes error messages; may be NULL. */
DRM_API drm_status drm_license_set_add(drm_license_set* set, const char* json,
                                       const char* source);
DRM_API size_t drm_license_set_size(const drm_license_set* set);
DRM_API drm_status drm_license_set_get(const drm_license_set* set,
                                       size_t index, char** out);

/* Permission evaluation over fresh licenses at tick `now`. */
DRM_API drm_status drm_permitted(const drm_license_set* set, const char* asset,
                                 const char* action, uint32_t now,
                                 int* permitted);
/* JSON array of {"asset","action"} objects. */
DRM_API drm_status drm_permission_set(const drm_license_set* set, uint32_t now,
                                      char** out);

/*
 * Chooses a license for (asset, action) over freshly installed licenses with
 * the configured chooser. `out` receives a JSON explanation:
 * {"algo","request","candidates","chosen","label":{...},"penalized"}.
 * Returns DRM_ERR_NOT_PERMITTED when no license can serve the request.
 */
DRM_API drm_status drm_choose(const drm_license_set* set,
                              const drm_config* config, const char* asset,
                              const char* action, char** out);

/*
 * Runs a script of `request <asset> <action>` and `tick` lines against the
 * installed licenses. `trace` receives the JSON Lines event trace;
 * `rejected` the number of denied requests.
 */
DRM_API drm_status drm_simulate(const drm_license_set* set,
                                const drm_config* config, const char* script,
                                const char* source, char** trace,
                                size_t* rejected);

/*
 * Checks `property` ("safety" or "liveness") with the configured chooser and
 * horizon. `verdict` receives the verdict JSON; `trace` (may be NULL) the
 * counterexample as JSON Lines, empty when the property holds.
 */
DRM_API drm_status drm_verify(const drm_license_set* set,
                              const drm_config* config, const char* property,
                              char** verdict, char** trace, int* holds);

/* Compares both choosers over the corpus generated from the configured
 * bounds. Either output may be NULL. */
DRM_API drm_status drm_compare_bounds(const drm_config* config,
                                      char** report_json, char** report_text);
/* Compares both choosers over explicit instance documents. */
DRM_API drm_status drm_compare_instances(const drm_config* config,
                                         const char* const* documents,
                                         const char* const* sources,
                                         size_t count, char** report_json,
                                         char** report_text);

/* A stateful agent; requests use the chooser configured at creation. */
DRM_API drm_status drm_agent_new(const drm_config* config, drm_agent** out);
DRM_API void drm_agent_free(drm_agent* agent);
DRM_API drm_status drm_agent_install(drm_agent* agent, const char* json);
DRM_API drm_status drm_agent_tick(drm_agent* agent);
DRM_API uint32_t drm_agent_now(const drm_agent* agent);
/* `decision` (may be NULL) receives the decision JSON. */
DRM_API drm_status drm_agent_request(drm_agent* agent, const char* asset,
                                     const char* action, char** decision);
/* `black` is set to 1 for Black, 0 for White. */
DRM_API drm_status drm_agent_color(const drm_agent* agent, const char* asset,
                                   const char* action, int* black);
DRM_API drm_status drm_agent_lost_rights(const drm_agent* agent, char** out);
DRM_API drm_status drm_agent_trace(const drm_agent* agent, char** out);

#ifdef __cplusplus
}
#endif

#endif /* DRMLAB_DRMLAB_H */
