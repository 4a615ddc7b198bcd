#pragma once

#include <cstddef>
#include <functional>

namespace ktgeom {

enum class Execution { serial, parallel };

/// Runs body(i) for every i in [0, count). The serial path is the reference;
/// the parallel path (OpenMP) must give bit-identical results, so bodies may
/// only write to slot i of their own output. An exception thrown at any index
/// is rethrown after the loop, lowest index first.
void sweep(std::size_t count, const std::function<void(std::size_t)>& body, Execution exec);

/// Worker count the parallel path would use.
int parallel_workers();

}  // namespace ktgeom
