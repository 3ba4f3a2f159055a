#pragma once

#include <cstdint>
#include <vector>

#include "lll/instance.hpp"
#include "lll/rational.hpp"

namespace lll {

/// Small random instances for exhaustive lemma checks: 2..max_events
/// events over a mixed binary/ternary space of at most max_space points.
struct DeskOptions {
  std::uint32_t max_events = 6;
  std::uint64_t max_space = 4096;
};

/// Events sized so that the symmetric 1/(4d) certificate applies at the
/// largest structural dependency degree.
ProductInstance gen_desk_symmetric(std::uint64_t seed, const DeskOptions& options = {});

struct DeskGeneral {
  ProductInstance instance;
  /// J_k: indices of events sharing no variable with event k.
  std::vector<std::vector<std::uint32_t>> families;
  std::vector<Rational> gammas;
};

/// Events sized so that the general certificate applies with the returned
/// families and gammas.
DeskGeneral gen_desk_general(std::uint64_t seed, const DeskOptions& options = {});

}  // namespace lll
