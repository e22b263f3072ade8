#include "wicklab/kernels.hpp"

#include <atomic>

namespace wicklab {

namespace {
std::atomic<Exec> g_exec{Exec::Parallel};
}

Exec default_exec() noexcept { return g_exec.load(std::memory_order_relaxed); }
void set_default_exec(Exec exec) noexcept { g_exec.store(exec, std::memory_order_relaxed); }

} // namespace wicklab
