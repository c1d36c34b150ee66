#include <stdio.h>
#include <string.h>

#include "opsymbol.h"

#define CHECK(call)                                                         \
    do {                                                                    \
        OpsymStatus st_ = (call);                                           \
        if (st_ != OPSYM_STATUS_OK) {                                       \
            fprintf(stderr, "%s failed: %d %s\n", #call, (int)st_,          \
                    opsym_last_error_message());                            \
            return 1;                                                       \
        }                                                                   \
    } while (0)

int main(void) {
    const char *d1 = "{\"m\":1,\"n\":2,\"terms\":[{\"alpha\":[1],"
                     "\"coeff\":[[\"1\",\"0\"],[\"0\",\"1\"]]}]}";
    const char *x1 = "{\"m\":1,\"n\":2,\"terms\":[{\"alpha\":[0],"
                     "\"coeff\":[[\"x1\",\"0\"],[\"0\",\"x1\"]]}]}";
    OpsymOperator *a = NULL, *b = NULL, *c = NULL;
    OpsymSymbol *s = NULL;
    char *json = NULL;
    int64_t order = 0;

    CHECK(opsym_operator_from_json(d1, &a));
    CHECK(opsym_operator_from_json(x1, &b));
    CHECK(opsym_operator_commutator(a, b, &c));
    CHECK(opsym_operator_pson_order(c, &order));
    CHECK(opsym_operator_to_json(c, &json));
    printf("%s %lld\n", json, (long long)order);
    opsym_string_free(json);

    CHECK(opsym_operator_sigma_pson(a, &s));
    CHECK(opsym_symbol_to_json(s, &json));
    printf("%s\n", json);
    opsym_string_free(json);

    OpsymSymbol *bad = NULL;
    OpsymStatus st = opsym_symbol_from_json("{\"m\":1}", &bad);
    printf("%d %s\n", (int)st, opsym_last_error_message() ? "msg" : "none");

    opsym_symbol_free(s);
    opsym_operator_free(a);
    opsym_operator_free(b);
    opsym_operator_free(c);
    return 0;
}
