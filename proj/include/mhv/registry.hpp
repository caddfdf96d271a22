#ifndef MHV_REGISTRY_HPP
#define MHV_REGISTRY_HPP

#include "mhv/element_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mhv {

/// Check identifiers in report order.
const std::vector<std::string>& registry_ids();

/// Canonical id for an id or alias ("RF" -> "3.1", "KM" -> "3.2");
/// throws InvalidArgument for unknown ids.
std::string canonical_registry_id(const std::string& id);

/// Runs the selected checks (all when `only` is empty) and returns
///   {"window", "seed", "results": [{"lemma", "verdict", "computed", "paper_claim", "witnesses"}]}
/// with verdicts verified, verified-at-window, discrepancy, out-of-scope or
/// violation. Checks run concurrently; the report is assembled in id order.
Json run_lemma_registry(const Window& w, std::uint64_t seed, const std::vector<std::string>& only = {});

bool registry_has_violation(const Json& report);

/// Largest |delta| the registry solves at for this window.
int registry_degree_bound(const Window& w);

}  // namespace mhv

#endif  // MHV_REGISTRY_HPP
