#pragma once

#include "cliffglue/pseudobundle.hpp"

#include <nlohmann/json_fwd.hpp>

#include <iosfwd>
#include <string>

namespace cliffglue {

// Plain-text bundle description:
//
//   [chart]
//   id V0
//   base_dim 0
//   fibre_dim 2
//   dual_default 2
//   dual_exception (0) 1          # optional, repeatable
//   metric 1 , 0 ; 0 , 1          # optional; rows ';', entries ',',
//                                 # polynomials in x0..x{base_dim-1}
//
//   [gluing]
//   source V1
//   target V0
//   point (0) -> ()               # repeatable; each followed by its lift
//   lift 1 ; 0                    # fibre(target) x fibre(source)
//
// '#' starts a comment. Parse errors carry the 1-based line number.
PseudoBundle parse_bundle_description(std::istream& in);
PseudoBundle parse_bundle_description_string(const std::string& text);
PseudoBundle load_bundle_description(const std::string& path);

nlohmann::json bundle_to_json(const PseudoBundle& b);

}  // namespace cliffglue
