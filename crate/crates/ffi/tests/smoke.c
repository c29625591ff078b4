#include <stdio.h>
#include <string.h>
#include "permavoid.h"

int main(void) {
    PvPatternSet *set = NULL;
    PvCountTable *table = NULL;
    char *text = NULL;
    uint64_t v = 0;
    if (pv_pattern_set_parse("1342,2143,2314", &set) != PV_STATUS_OK) return 1;
    if (pv_count_avoiders(set, 6, &table) != PV_STATUS_OK) return 2;
    if (pv_count_table_get_u64(table, 6, &v) != PV_STATUS_OK || v != 255) return 3;
    if (pv_count_table_to_string(table, &text) != PV_STATUS_OK) return 4;
    printf("%s\n", text);
    pv_string_free(text);
    if (pv_pattern_set_parse("12x", &set) != PV_STATUS_INVALID_ARGUMENT) return 5;
    if (pv_last_error() == NULL || strstr(pv_last_error(), "12x") == NULL) return 6;
    pv_count_table_free(table);
    pv_pattern_set_free(set);
    return 0;
}
