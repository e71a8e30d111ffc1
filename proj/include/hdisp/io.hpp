#pragma once

#include <string>

#include "hdisp/deformation.hpp"
#include "json.hpp"

namespace hdisp {

using json = nlohmann::json;

// All readers raise ErrorKind::Schema with the JSON path of the offending node.
json load_json_file(const std::string& file);
json parse_json_arg(const std::string& text);  // inline JSON, or @file

Ring ring_from_json(const json& j, const std::string& path = "$");
json ring_to_json(const Ring& r);

// {"1": "2", "x": "1"}; over F_q (q > 1) coefficients are lists of F_p digits, lowest first.
RingElem elem_from_json(const Ring& r, const json& j, const std::string& path = "$");
json elem_to_json(const RingElem& a);

WittVec witt_from_json(const Ring& r, std::size_t m, const json& j, const std::string& path = "$");
json witt_to_json(const WittVec& x);

WMat wmat_from_json(const Ring& r, std::size_t m, const json& j, const std::string& path = "$");
json wmat_to_json(const WMat& a);

// {"ring": B, "J": ["e"]}
Ext ext_from_json(const json& j, const std::string& path = "$");
json ext_to_json(const Ext& e);

// {"kind": "witt"|"zip"|"relative"|"tautological", "ring": ..., "m": ..., "ext": ...}
FramePtr frame_from_json(const json& j, const std::string& path = "$");
json frame_to_json(const Frame& f);

// {"a": witt, "x": elem}; x only for relative frames.
PElem pelem_from_json(const Frame& f, const json& j, const std::string& path = "$");
json pelem_to_json(const Frame& f, const PElem& u);

// {"row": [...], "col": [...], "entries": [[...]]}; positive-degree entries are P elements,
// the others Witt vectors.
GradedMatrix graded_from_json(const FramePtr& f, const json& j, const std::string& path = "$");
json graded_to_json(const GradedMatrix& a);

// {"frame": ..., "mu": [...], "phi": [[...]]}
Display display_from_json(const json& j, const std::string& path = "$");
json display_to_json(const Display& d);

json fzip_to_json(const FZip& z);
FZip fzip_from_json(const json& j, const std::string& path = "$");

json hodge_to_json(const HodgeFiltration& h);
json hodge_lift_to_json(const HodgeLift& l);

}  // namespace hdisp
