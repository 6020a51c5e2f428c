/* Smoke test for the C API: build a table, read an entry, compute a
 * measure, and exercise the error path. Compile with something like
 *
 *   cc capi_demo.c -I../include ../../../target/debug/libhadamard_sojourn_ffi.a \
 *      -lpthread -ldl -lm -o capi_demo
 */
#include <assert.h>
#include <stdio.h>
#include <string.h>

#include "hadamard_sojourn.h"

int main(void) {
    HwsTable *table = NULL;
    assert(hws_table_new(0, 4, &table) == HWS_STATUS_OK);

    char *json = NULL;
    assert(hws_table_entry_json(table, 2, 0, 0, &json) == HWS_STATUS_OK);
    assert(strstr(json, "1/2") != NULL);
    hws_string_free(json);
    hws_table_free(table);

    char *csv = NULL;
    assert(hws_measure(HWS_MEASURE_KIND_FREE_WALK, 4, NULL, HWS_FORMAT_CSV, &csv) ==
           HWS_STATUS_OK);
    assert(strstr(csv, "0,5/8,5/12") != NULL);
    hws_string_free(csv);

    /* Odd horizons are rejected with a readable message. */
    char *unused = NULL;
    assert(hws_measure(HWS_MEASURE_KIND_FREE_WALK, 3, NULL, HWS_FORMAT_CSV, &unused) ==
           HWS_STATUS_INVALID_ARGUMENT);
    assert(strlen(hws_last_error()) > 0);

    printf("c-api smoke ok (version %s)\n", hws_version());
    return 0;
}
