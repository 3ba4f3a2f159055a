#pragma once

#include <span>
#include <vector>

#include "lll/event.hpp"
#include "lll/rational.hpp"
#include "lll/space.hpp"

namespace lll {

/// Closed-form fraction |event| / |M| for every event kind:
///   Monochromatic, s cells with domains r_i   min(r) / prod(r)   (r^(1-s) when uniform)
///   MissingColor, s cells, r colors           sum_{i=1}^{r-1} (-1)^(i+1) C(r,i) ((r-i)/r)^s
///   Clause over boolean variables, k literals 2^-k (0 for a tautology)
///   ForbiddenPatterns / TruthTable            listed tuples / support size
/// The event must be valid for `space`.
Rational closed_form_measure(const VariableSpace& space, const BadEvent& event);

/// Exact measure of a single event. Uses the closed form; never enumerates.
Rational measure(const VariableSpace& space, const BadEvent& event);

/// Measure by counting over the event's support. Throws
/// EnumerationCapExceeded if the support has more than
/// `limits.max_assignments` tuples.
Rational enumerated_measure(const VariableSpace& space, const BadEvent& event,
                            const EnumerationLimits& limits = {});

/// Fraction of points where every term holds, counted over the union of the
/// term supports. The empty list has measure 1.
Rational joint_measure(const VariableSpace& space, std::span<const EventTerm> terms,
                       const EnumerationLimits& limits = {});

/// |A ∩ B| · |M| == |A| · |B|.
bool independent(const VariableSpace& space, EventTerm a, EventTerm b,
                 const EnumerationLimits& limits = {});

/// A is independent of the intersection of every non-empty subfamily.
/// Throws EnumerationCapExceeded when the family is larger than
/// `limits.max_family` or a count would exceed `limits.max_assignments`.
bool independent_from_family(const VariableSpace& space, EventTerm a,
                             std::span<const EventTerm> family,
                             const EnumerationLimits& limits = {});

/// True iff a's support is disjoint from every member's support, which
/// certifies independence from the family in a product space.
bool support_disjoint_certificate(const BadEvent& a, std::span<const EventTerm> family);

bool supports_intersect(const BadEvent& a, const BadEvent& b);

}  // namespace lll
