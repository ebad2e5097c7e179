// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "bordertn/boundary_mps.hpp"
#include "bordertn/conversions.hpp"
#include "bordertn/interpolation.hpp"
#include "bordertn/structures.hpp"

// JSON exchange formats (documented in the README):
//   tensor     {"legs":[{"id","dim"},...], "data":[[re,im],...]}   row-major
//   polytensor {"legs":[...], "terms":{"<exponent>":[[re,im],...]}}
//   family     {"<vertex>":[{"exponent":k,"matrix":[[[re,im],...],...]},...]}
//   structure  {"vertices":[...], "edges":[{"id","vertices"}],
//               "plaquettes":{"<edge>":{...}}, "grouping":{"<vertex>":[["e",slot],...]}}
//   network    {"schedule","rows","sites":[{"id","tensor","physical"}],
//               "bonds":[["siteA","legA","siteB","legB"],...]}

namespace bordertn::io {

std::string tensor_to_json(const DenseTensor& t, int indent = -1);
DenseTensor tensor_from_json(const std::string& s);

std::string poly_tensor_to_json(const PolyTensor& p, int indent = -1);
PolyTensor poly_tensor_from_json(const std::string& s);

std::string family_to_json(const LocalMapFamily& f, int indent = -1);
LocalMapFamily family_from_json(const std::string& s);

std::string certificate_to_json(const DegenerationCertificate& c, int indent = -1);

std::string structure_to_json(const EntanglementStructure& s, int indent = -1);
EntanglementStructure structure_from_json(const std::string& s);

std::string network_to_json(const PepsNetwork& n, int indent = -1);
PepsNetwork network_from_json(const std::string& s);

std::string report_to_json(const ContractionReport& r, int indent = -1);

std::string observable_to_json(const ProductObservable& o, int indent = -1);
ProductObservable observable_from_json(const std::string& s);

void save_file(const std::string& path, const std::string& contents);
std::string load_file(const std::string& path);

}  // namespace bordertn::io
