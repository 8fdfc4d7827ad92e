// Copyright 2026 The Polmix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POLMIX_JSON_IO_H
#define POLMIX_JSON_IO_H

#include <string>
#include <vector>

#include "json.hpp"
#include "polmix/circuit.h"
#include "polmix/designer.h"
#include "polmix/entanglement.h"
#include "polmix/local_structure.h"
#include "polmix/tomography.h"

// File forms. Matrices are {"re": rows, "im": rows}, row-major, basis order
// HH, HV, VH, VV for two-photon operators. Angles are radians. Path indices
// are 1-based strings in object keys.
namespace polmix::json_io {

using nlohmann::json;

json to_json(const Mat4 &m);
json to_json(const Mat2 &m);
json to_json(const PureState &psi);
json to_json(const DensityMatrix &rho);
json to_json(const Decomposition &d);
json to_json(const SchmidtForm &s);
json to_json(const WaveplateTriple &w);
json to_json(const FilterSpec &f);
json to_json(const CircuitSpec &c);
json to_json(const Geometry &g);
json to_json(const std::vector<Violation> &violations);
json to_json(const CountRecord &r);

/// Parsers throw InvalidInput on malformed or unphysical content.
Mat4 mat4_from_json(const json &j);
Mat2 mat2_from_json(const json &j);
PureState pure_state_from_json(const json &j);
DensityMatrix density_from_json(const json &j, double tolerance = tol::kPhysical);
Decomposition decomposition_from_json(const json &j);
FilterSpec filter_from_json(const json &j);
CircuitSpec circuit_from_json(const json &j);
Geometry geometry_from_json(const json &j);
CountRecord count_record_from_json(const json &j);

json design_report(const DensityMatrix &target, const GeneralDesign &design, const DesignCheck &check);
json design_report(const TwoStateDesign &design);

/// Reads a whole file; throws InvalidInput if unreadable or not JSON.
json read_json_file(const std::string &path);

}  // namespace polmix::json_io

#endif
