#include <stdio.h>
#include <string.h>
#include "laplat.h"

int main(void) {
    LaplatGraph *g = NULL;
    if (laplat_graph_from_json("{\"vertices\":3,\"edges\":[[0,1,3],[0,2,2],[1,2,2]]}", &g) != LAPLAT_STATUS_OK) {
        return 10;
    }
    char *trees = NULL;
    if (laplat_spanning_trees(g, &trees) != LAPLAT_STATUS_OK || strcmp(trees, "16") != 0) {
        return 11;
    }
    laplat_string_free(trees);
    uint64_t linf = 0;
    if (laplat_min_cut_linf(g, &linf) != LAPLAT_STATUS_OK || linf != 2) {
        return 12;
    }
    laplat_graph_free(g);

    LaplatGraph *bad = NULL;
    if (laplat_graph_from_json("{\"vertices\":3,\"edges\":[[1,1,1]]}", &bad) == LAPLAT_STATUS_OK) {
        return 13;
    }
    printf("%s\n", laplat_last_error_message());
    return 0;
}
