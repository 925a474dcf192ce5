#include <stdio.h>
#include <string.h>

#include "qhf.h"

int main(void) {
    QhfStructure *h = NULL;
    if (qhf_function_algebra("symmetric 3", &h) != QHF_STATUS_OK) {
        fprintf(stderr, "build: %s\n", qhf_last_error());
        return 1;
    }
    size_t dim = 0;
    int pass = 0;
    if (qhf_structure_dim(h, &dim) != QHF_STATUS_OK || dim != 6) return 2;
    if (qhf_structure_verify(h, &pass, NULL) != QHF_STATUS_OK || !pass) return 3;
    qhf_structure_free(h);

    QhfStatus st = qhf_group_algebra(NULL, &h);
    if (st != QHF_STATUS_NULL_POINTER || qhf_last_error() == NULL) return 4;

    const char *scene = "{\"schema_version\": 1}";
    char *report = NULL;
    int code = -1;
    if (qhf_run_scene(scene, QHF_COMMAND_VERIFY, 0, &report, &code) != QHF_STATUS_OK) return 5;
    if (code != 0 || strstr(report, "\"verify\"") == NULL) return 6;
    qhf_string_free(report);

    printf("ok %s\n", qhf_status_name(QHF_STATUS_OK));
    return 0;
}
