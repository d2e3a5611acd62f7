#include <math.h>
#include <stdio.h>
#include <string.h>

#include "algen.h"

#define CHECK(c)                                                   \
    do {                                                           \
        if (!(c)) {                                                \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #c); \
            return 1;                                              \
        }                                                          \
    } while (0)

int main(void) {
    AlgenField *f = NULL;
    CHECK(algen_field_new(3, 2, &f) == ALGEN_STATUS_OK);
    CHECK(algen_field_order(f) == 9);
    algen_field_free(f);

    CHECK(algen_field_new(9, 1, &f) == ALGEN_STATUS_NON_PRIME);
    CHECK(strstr(algen_last_error(), "not prime") != NULL);

    char *count = NULL;
    CHECK(algen_gen_count(2, 3, 2, &count) == ALGEN_STATUS_OK);
    CHECK(strcmp(count, "768") == 0);
    algen_string_free(count);

    AlgenDensity d;
    CHECK(algen_zeta(2, 1e-12, &d) == ALGEN_STATUS_OK);
    CHECK(fabs(d.value - 1.6449340668482264) <= 1e-12);

    AlgenZTuple *t = NULL;
    CHECK(algen_ztuple_from_json("[{\"n\":2,\"entries\":[1,1,0,1]},{\"n\":2,\"entries\":[1,0,1,1]}]", &t) ==
          ALGEN_STATUS_OK);
    bool gen = true;
    char *index = NULL;
    CHECK(algen_ztuple_generates(t, &gen, &index) == ALGEN_STATUS_OK);
    printf("generates=%d index=%s\n", gen, index);
    algen_string_free(index);
    algen_ztuple_free(t);
    return 0;
}
