#pragma once

namespace e2v {

/// Upper bound on data-parallel threads. Resolution order: the value set
/// with set_thread_cap(), then the ETHICS_AUDIT_THREADS environment
/// variable, then the OpenMP default. Never less than 1.
int thread_cap();

/// n < 1 restores automatic resolution.
void set_thread_cap(int n);

} // namespace e2v
