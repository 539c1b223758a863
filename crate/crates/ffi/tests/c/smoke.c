#include <math.h>
#include <stdio.h>
#include <string.h>

#include "darboux.h"

#define CHECK(cond)                                          \
    do {                                                     \
        if (!(cond)) {                                       \
            fprintf(stderr, "check failed: %s\n", #cond);    \
            return 1;                                        \
        }                                                    \
    } while (0)

int main(void) {
    uint32_t bad[] = {1};
    DarbouxTransform *t = NULL;
    CHECK(darboux_transform_new(NULL, bad, 1, &t) == DARBOUX_STATUS_INADMISSIBLE);
    CHECK(strstr(darboux_last_error(), "k = 0") != NULL);

    uint32_t levels[] = {1, 2};
    CHECK(darboux_transform_new("oscillator", levels, 2, &t) == DARBOUX_STATUS_OK);
    size_t order = 0;
    CHECK(darboux_transform_order(t, &order) == DARBOUX_STATUS_OK && order == 2);

    double v0 = 0, vn = 0;
    CHECK(darboux_transform_potential(t, 0.0, &v0, &vn) == DARBOUX_STATUS_OK);
    CHECK(fabs(vn + 2.5) < 1e-15);

    char *json = NULL;
    CHECK(darboux_transform_to_json(t, &json) == DARBOUX_STATUS_OK);
    CHECK(strstr(json, "\"wronskian_poly\"") != NULL);
    darboux_string_free(json);

    double values[3];
    CHECK(darboux_transform_spectrum(t, -12.0, 12.0, 2401, 3, values) == DARBOUX_STATUS_OK);
    CHECK(fabs(values[0]) < 5e-3 && fabs(values[1] - 3.0) < 5e-3 && fabs(values[2] - 4.0) < 5e-3);

    darboux_transform_free(t);
    puts("ok");
    return 0;
}
