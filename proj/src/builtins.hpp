#pragma once

#include <map>
#include <string>
#include <vector>

#include "model.hpp"

namespace z2kit {

// Built-in model generators. Unknown parameter names are rejected; omitted
// parameters take the listed defaults.
//
//   kane_mele    honeycomb, 4 bands: t=1, lambda_so=0.06, lambda_r=0.05,
//                lambda_v=0.1, zeeman=0 (zeeman != 0 breaks TRS on purpose)
//   bhz          4 bands: a=1, b=1, m=0.5
//   qwz_pair     two conjugate Chern blocks, 4 bands: a=1, b=1, m=1
//   atomic       flat bands diag(-m,-m,+m,+m): m=1
//   strong_ti_3d cubic lattice, 8 bands = Dirac block (+) trivial block:
//                a=1, b=1, m=2, m_trivial=-2
BlochModel make_builtin(const std::string& name,
                        const std::map<std::string, double>& parameters = {});

std::vector<std::string> builtin_names();

// Random 4-band TRS model: range-1 random hoppings symmetrized by
// H -> (H + U H(-k)* U^dag)/2 plus a random band-splitting term. Not
// gap-filtered; diagonalize() decides insulating vs metallic.
BlochModel make_random_trs_model(unsigned seed, int dim = 2);

}  // namespace z2kit
