/* Compute γ_1 and γ_1(1/2) through the C interface.
 *
 *   cargo build -p stieltjes-ffi --release
 *   cc -Icrates/ffi/include crates/ffi/examples/demo.c \
 *      target/release/libstieltjes_ffi.a -lmpfr -lgmp -lpthread -ldl -lm -o demo
 */
#include <stdio.h>

#include "stieltjes.h"

static int show(StjRequest *req, const char *label) {
  StjResult *res = NULL;
  StjStatus st = stj_compute(req, &res);
  if (st != STJ_STATUS_OK) {
    char msg[256];
    stj_last_error(msg, sizeof msg);
    fprintf(stderr, "%s: status %d: %s\n", label, (int)st, msg);
    return 1;
  }
  char value[128];
  stj_result_value(res, value, sizeof value);
  printf("%s = %s (error %.3g, %llu terms)\n", label, value, stj_result_error_f64(res),
         (unsigned long long)stj_result_terms(res));
  stj_result_free(res);
  return 0;
}

int main(void) {
  printf("stieltjes %s, k <= %u\n", stj_version(), stj_j_max());
  StjRequest *req = stj_request_new(1);
  stj_request_set_terms(req, 2000);
  stj_request_set_bits(req, 128);
  int rc = show(req, "gamma_1");
  stj_request_set_half(req, true);
  rc |= show(req, "gamma_1(1/2)");
  stj_request_free(req);

  StjRequest *bad = stj_request_new(99);
  rc |= !show(bad, "gamma_99");
  stj_request_free(bad);
  return rc;
}
