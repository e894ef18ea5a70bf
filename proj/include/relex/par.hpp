// Worker-count control for the OpenMP coverage kernels. All parallel loops
// in relex reduce over integers or write results by index, so the output is
// byte-identical for any job count.

#pragma once

namespace relex::par {

// Number of workers for parallel kernels; >= 1. Default 1.
int jobs();
void set_jobs(int n);

}  // namespace relex::par
