#include <stdio.h>
#include <string.h>
#include "containlab.h"

int main(void) {
    ClConfig *cfg = NULL;
    if (cl_config_parse("nowhere", &cfg) != CL_STATUS_PARSE || cfg != NULL || cl_last_error() == NULL) {
        return 1;
    }
    if (cl_config_parse("dual-hesse", &cfg) != CL_STATUS_OK) {
        return 2;
    }
    size_t n = 0;
    ClVerdict v;
    char *json = NULL;
    if (cl_config_num_points(cfg, &n) != CL_STATUS_OK || n != 12) {
        return 3;
    }
    if (cl_check(cfg, 3, 2, 0, &v, &json) != CL_STATUS_OK || v != CL_VERDICT_FAILS) {
        return 4;
    }
    if (strstr(json, "\"witness_degree\":9") == NULL) {
        return 5;
    }
    printf("%s\n", json);
    cl_string_free(json);
    cl_config_free(cfg);
    return 0;
}
