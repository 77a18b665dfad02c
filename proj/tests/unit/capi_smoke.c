// Copyright 2026 The mplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* Plain C consumer of the public header. */
#include "mplab/mplab.h"

#include <math.h>
#include <stdio.h>

static int failures = 0;

#define EXPECT(cond)                                          \
  do {                                                        \
    if (!(cond)) {                                            \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                             \
    }                                                         \
  } while (0)

int main(void) {
  double lo, hi, atom, c;
  mplab_stream* rng = NULL;
  mplab_model* model = NULL;
  mplab_model* bad = NULL;
  mplab_matrix* x = NULL;
  mplab_matrix* cov = NULL;
  mplab_spectrum* s = NULL;
  mplab_complex z = {0.0, 1.0};
  mplab_complex st;
  double ks = 1.0;

  EXPECT(mplab_law_support(4.0, &lo, &hi, &atom) == MPLAB_OK);
  EXPECT(fabs(atom - 0.75) < 1e-15);
  EXPECT(mplab_law_cdf(4.0, 0.0, &c) == MPLAB_OK && fabs(c - 0.75) < 1e-15);

  EXPECT(mplab_stream_create(5, "smoke", 0, 0, &rng) == MPLAB_OK);
  EXPECT(mplab_model_parse("iid-rademacher", &model) == MPLAB_OK);
  EXPECT(mplab_sample_data_matrix(model, 100, 200, rng, &x) == MPLAB_OK);
  EXPECT(mplab_sample_covariance(x, &cov) == MPLAB_OK);
  EXPECT(mplab_eigh(cov, 0, &s) == MPLAB_OK);
  EXPECT(mplab_spectrum_size(s) == 100);
  EXPECT(mplab_ks_distance(s, 0.5, &ks) == MPLAB_OK && ks < 0.1);
  EXPECT(mplab_empirical_stieltjes(s, z, &st) == MPLAB_OK && st.im > 0.0);
  EXPECT(mplab_model_parse("nope", &bad) == MPLAB_ERR_PARSE);
  EXPECT(mplab_last_error()[0] != '\0');

  mplab_spectrum_free(s);
  mplab_matrix_free(cov);
  mplab_matrix_free(x);
  mplab_model_free(model);
  mplab_stream_free(rng);
  mplab_spectrum_free(NULL);
  EXPECT(bad == NULL);

  if (failures) return 1;
  printf("capi smoke ok\n");
  return 0;
}
