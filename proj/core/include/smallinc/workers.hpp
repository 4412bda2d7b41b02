#pragma once

namespace smallinc {

/// Process-wide bound on the number of worker threads used by the dense
/// kernel products. Defaults to 1; values below 1 are clamped to 1.
void set_worker_count(int n);
int worker_count();

} // namespace smallinc
