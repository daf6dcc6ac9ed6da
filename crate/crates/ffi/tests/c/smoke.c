#include <stdio.h>
#include <string.h>
#include "spinhol.h"

int main(void) {
    SpinholMultivector *t = NULL;
    const char *rec = "{\"n\":8,\"terms\":[{\"blade\":[1,2,3,4],\"num\":1,\"den\":1},{\"blade\":[5,6,7,8],\"num\":1,\"den\":1}]}";
    if (spinhol_multivector_from_json(rec, &t) != SPINHOL_STATUS_OK) return 1;
    char *desc = NULL;
    if (spinhol_classify(t, &desc) != SPINHOL_STATUS_OK) return 2;
    if (strstr(desc, "\"so(8,1)\"") == NULL) return 3;
    size_t z = 99;
    if (spinhol_fixed_spinor_dim(t, &z) != SPINHOL_STATUS_OK || z != 0) return 4;
    if (spinhol_volume(11, &t) != SPINHOL_STATUS_CLIFFORD) return 5;
    char *err = spinhol_last_error();
    printf("%s\n", err);
    spinhol_string_free(err);
    spinhol_string_free(desc);
    spinhol_multivector_free(t);
    return 0;
}
