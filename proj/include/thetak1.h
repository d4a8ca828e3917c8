#ifndef THETAK1_H
#define THETAK1_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tk1_engine tk1_engine;
typedef struct tk1_elem tk1_elem;

typedef enum {
  TK1_OK = 0,
  TK1_ERR_INVALID = 1,  /* bad argument or configuration */
  TK1_ERR_PARSE = 2,    /* malformed payload */
  TK1_ERR_MATH = 3,     /* a computation detected an inconsistency */
  TK1_ERR_CAPACITY = 4, /* parameters exceed the coefficient window */
  TK1_ERR_IO = 5,
  TK1_ERR_INTERNAL = 6
} tk1_status;

/* Create an engine from a JSON configuration:
     {"p":5,"gamma_level":0,"precision":2,"seed":1,
      "trials":0,"staging":true,"suites":["psi-image"]}
   All fields are optional; the defaults are shown (empty "suites" selects
   every suite, "trials":0 keeps each suite's default count).  On a
   configuration error the call still returns an engine when it can, so the
   message is available through tk1_engine_last_error; such an engine only
   supports that call and tk1_engine_free. */
tk1_status tk1_engine_new(const char* config_json, tk1_engine** out);
void tk1_engine_free(tk1_engine* e);

/* message for the most recent failing call on this engine */
const char* tk1_engine_last_error(const tk1_engine* e);

/* Run the configured suites.  *report_json receives the full report (free
   with tk1_string_free); *all_passed is set to 1 iff no suite failed. */
tk1_status tk1_run(tk1_engine* e, char** report_json, int* all_passed);

/* which: "classes", "characters" or "theta"; *csv receives the table */
tk1_status tk1_dump_tables(tk1_engine* e, const char* which, char** csv);

/* parse an element payload (any supported kind) into a handle */
tk1_status tk1_elem_load(tk1_engine* e, const char* json, tk1_elem** out);
/* canonical serialization of a handle */
tk1_status tk1_elem_dump(tk1_engine* e, const tk1_elem* x, char** json);
tk1_status tk1_elem_equal(tk1_engine* e, const tk1_elem* x, const tk1_elem* y,
                          int* eq);
void tk1_elem_free(tk1_elem* x);

void tk1_string_free(char* s);
const char* tk1_version(void);

#ifdef __cplusplus
}
#endif

#endif /* THETAK1_H */
