#include "sscg.h"
#include <assert.h>
#include <stdio.h>
#include <string.h>

int main(void) {
    SscgGraph *g = NULL;
    assert(sscg_graph_build(SSCG_MODEL_FRACTAL, 2, 0, &g) == SSCG_STATUS_OK);
    assert(sscg_graph_vertices(g) == 12);
    assert(sscg_graph_edges(g) == 21);

    SscgResult *r = NULL;
    assert(sscg_solve(g, SSCG_PROBLEM_DOMINATING_SET, SSCG_CONSTRAINT_KEEP_TWO, 0.0, &r) == SSCG_STATUS_OK);
    assert(sscg_result_optimum(r) == 3);
    char *count = sscg_result_count(r);
    assert(strcmp(count, "2") == 0);
    sscg_string_free(count);
    sscg_result_free(r);
    sscg_graph_free(g);

    assert(sscg_graph_build(SSCG_MODEL_FRACTAL, 30, 0, &g) == SSCG_STATUS_CAPABILITY);
    assert(sscg_last_error_message() != NULL);

    uint64_t v = 0;
    assert(sscg_predict_optimum(SSCG_MODEL_FRACTAL, SSCG_PROBLEM_MATCHING, 5, &v) == SSCG_STATUS_OK);
    assert(v == (1024 + 2) / 3);

    puts("ffi demo ok");
    return 0;
}
