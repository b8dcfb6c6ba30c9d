#include <stdio.h>
#include <string.h>
#include "lattangle.h"

#define CHECK(x) do { if (!(x)) { fprintf(stderr, "failed: %s (%s)\n", #x, la_last_error() ? la_last_error() : ""); return 1; } } while (0)

int main(void) {
    LaConfig *cfg = NULL;
    LaCyclo *tau = NULL;
    int32_t holds = -1;
    char *n0 = NULL, *bound = NULL;

    CHECK(la_config_from_json("{\"caseId\":\"C4\",\"params\":[\"1\",\"-1\"],\"roots\":[\"3/12\",\"1/12\",\"10/12\"]}", &cfg) == LA_STATUS_OK);
    CHECK(la_config_tau(cfg, &tau) == LA_STATUS_OK);
    CHECK(la_verify_angle(tau, "inf", "0", 3, 12, &holds) == LA_STATUS_OK);
    CHECK(la_constants(&n0, &bound) == LA_STATUS_OK);
    CHECK(strcmp(n0, "39648495215104846368289992000") == 0);
    CHECK(la_cyclo_from_json("not json", &tau) == LA_STATUS_PARSE);
    CHECK(la_last_error() != NULL);
    CHECK(holds == 1);

    la_string_free(n0);
    la_string_free(bound);
    la_cyclo_free(tau);
    la_config_free(cfg);
    return 0;
}
