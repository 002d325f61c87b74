/* Build after `cargo build --release -p dfsgf-ffi`:
 *   cc crates/ffi/examples/smoke.c -Icrates/ffi/include \
 *      target/release/libdfsgf_ffi.a -lpthread -ldl -lm -o smoke
 */
#include <stdio.h>
#include "dfsgf.h"

int main(void) {
    DfsgfEngine *engine = dfsgf_engine_new(false);
    int failures = 0;
    for (size_t n = 1; n <= 9; n++) {
        bool ok = false;
        if (dfsgf_engine_verify_knuth(engine, n, &ok) != DFSGF_STATUS_OK || !ok) {
            failures++;
        }
        printf("n=%zu knuth=%s\n", n, ok ? "true" : "false");
    }
    dfsgf_engine_free(engine);

    DfsgfDistribution *dist = NULL;
    if (dfsgf_distribution_new(5, "3/10", DFSGF_ROLE_FORWARD, 4, &dist) != DFSGF_STATUS_OK) {
        fprintf(stderr, "error: %s\n", dfsgf_last_error());
        return 1;
    }
    for (size_t k = 0; k < dfsgf_distribution_len(dist); k++) {
        char *p = NULL;
        dfsgf_distribution_prob(dist, k, &p);
        printf("P(F=%zu) = %s\n", k, p);
        dfsgf_string_free(p);
    }
    dfsgf_distribution_free(dist);

    if (dfsgf_distribution_new(5, "2", DFSGF_ROLE_FORWARD, 4, &dist) == DFSGF_STATUS_OK) {
        failures++;
    } else {
        printf("rejected p=2: %s\n", dfsgf_last_error());
    }
    return failures == 0 ? 0 : 1;
}
