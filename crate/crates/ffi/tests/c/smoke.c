#include <stdio.h>
#include <string.h>
#include "comfort.h"

int main(void) {
    ComfortGraph *g = NULL;
    if (comfort_graph_parse("6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n", &g) != COMFORT_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", comfort_last_error());
        return 1;
    }
    uint32_t ecc[6], r = 0, d = 0;
    if (comfort_graph_eccentricities(g, ecc, 6, &r, &d) != COMFORT_STATUS_OK || r != 3 || d != 3) {
        return 2;
    }
    ComfortTeam *t = NULL;
    if (comfort_hicom(g, 3, 2, &t) != COMFORT_STATUS_OK) {
        fprintf(stderr, "hicom: %s\n", comfort_last_error());
        return 3;
    }
    size_t members[6];
    size_t len = comfort_team_len(t);
    if (len != 3 || comfort_team_members(t, members, 6) != COMFORT_STATUS_OK) {
        return 4;
    }
    ComfortReport rep;
    if (comfort_team_report(t, &rep) != COMFORT_STATUS_OK || rep.verdict != COMFORT_VERDICT_HIGHLY_COMFORTABLE) {
        return 5;
    }
    char *json = NULL;
    if (comfort_team_json(t, &json) != COMFORT_STATUS_OK || strstr(json, "\"team\"") == NULL) {
        return 6;
    }
    comfort_string_free(json);
    if (comfort_hicom(g, 21, 20, &t) != COMFORT_STATUS_INVALID_PARAMETER) {
        return 7;
    }
    printf("%zu %zu %zu\n", members[0], members[1], members[2]);
    comfort_team_free(t);
    comfort_graph_free(g);
    return 0;
}
