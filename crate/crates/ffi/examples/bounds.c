/* Build: cargo build -p schubert-tangent-ffi
 *        cc -Icrates/ffi/include crates/ffi/examples/bounds.c \
 *           target/debug/libschubert_tangent_ffi.a -lpthread -ldl -lm -o bounds
 */
#include <stdio.h>
#include "schubert_tangent.h"

int main(void) {
    StDatum *d = NULL;
    if (st_datum_new('D', 4, &d) != ST_STATUS_OK) {
        fprintf(stderr, "%s\n", st_last_error_message());
        return 1;
    }
    /* Doubled coordinates: mu = (3,3,3,0), lambda = (1,1,1,0). */
    const int64_t mu[4] = {6, 6, 6, 0};
    const int64_t lambda[4] = {2, 2, 2, 0};
    size_t root = 0;
    int64_t k = 0;
    st_simple_root_index(d, 3, true, &root);
    if (st_k_alpha(d, lambda, mu, 4, root, &k) != ST_STATUS_OK) {
        fprintf(stderr, "%s\n", st_last_error_message());
        st_datum_free(d);
        return 1;
    }
    const int64_t num[4] = {0, 0, 1, -1};
    const int64_t den[4] = {1, 1, 1, 1};
    const size_t search[3] = {1, 3, 4};
    int64_t l = 0;
    st_l_h(d, lambda, mu, 4, num, den, search, 3, 0, &l);
    printf("k(-alpha3) = %lld, l_H = %lld\n", (long long)k, (long long)l);

    const char *argv[] = {"classify", "--series", "D", "--rank", "4", "--mu", "3,3,3,0"};
    char *report = NULL;
    int32_t code = 0;
    if (st_run_command(argv, 7, &report, &code) == ST_STATUS_OK) {
        printf("%s", report);
        st_string_free(report);
    }
    st_datum_free(d);
    return 0;
}
