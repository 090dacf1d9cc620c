#include "triphase/netlist.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "triphase/errors.hpp"
#include "triphase/records_io.hpp"

namespace triphase {

namespace {

using Json = nlohmann::ordered_json;

// Rounds through the 12-significant-digit text form so that dumping and
// re-parsing a netlist is byte-stable.
double sig12(double x) { return std::strtod(format_sig12(x).c_str(), nullptr); }

// Elements hold canonical parameters (theta in [0, pi/2], phases in
// (-pi, pi]), but rounding a boundary value to 12 digits can overshoot the
// range edge; re-parsing would then re-canonicalize and change the bytes.
// Values pushed past |bound| are replaced by the bound truncated to 12
// digits, which stays inside.
double sig12_bounded(double x, double bound) {
  const double v = sig12(x);
  if (std::abs(v) > bound) {
    const double truncated =
        std::trunc(bound * 1e11) / 1e11;  // bound is pi or pi/2
    return std::copysign(truncated, x);
  }
  return v;
}

const char* kind_name(ElementKind k) {
  switch (k) {
    case ElementKind::BS12:
      return "BS12";
    case ElementKind::BS23:
      return "BS23";
    case ElementKind::Phase:
      return "Phase";
  }
  throw ConsistencyError("netlist: unknown element kind");
}

double require_number(const Json& e, const char* key) {
  if (!e.contains(key) || !e[key].is_number()) {
    throw InvalidParams(std::string("netlist: missing numeric field '") + key +
                        "'");
  }
  const double x = e[key].get<double>();
  if (!std::isfinite(x)) {
    throw InvalidParams(std::string("netlist: non-finite field '") + key +
                        "'");
  }
  return x;
}

void require_channels(const Json& e, const std::vector<int>& expect) {
  if (!e.contains("channels") || !e["channels"].is_array()) {
    throw InvalidParams("netlist: missing 'channels' array");
  }
  const auto got = e["channels"].get<std::vector<int>>();
  if (got != expect) {
    throw InvalidParams("netlist: 'channels' does not match element kind");
  }
}

}  // namespace

std::string netlist_to_json(const ElementSequence& seq) {
  Json j;
  j["label"] = seq.label;
  j["elements"] = Json::array();
  for (const Element& el : seq.elements) {
    Json e;
    e["kind"] = kind_name(el.kind);
    e["channels"] = el.channels();
    if (el.kind == ElementKind::Phase) {
      e["deltas"] = {sig12(el.deltas[0]), sig12(el.deltas[1]),
                     sig12(el.deltas[2])};
    } else {
      constexpr double kPi = 3.14159265358979323846;
      e["phi_t"] = sig12_bounded(el.bs.phi_t, kPi);
      e["theta"] = sig12_bounded(el.bs.theta, kPi / 2);
      e["phi_r"] = sig12_bounded(el.bs.phi_r, kPi);
    }
    j["elements"].push_back(e);
  }
  return j.dump(2) + "\n";
}

ElementSequence netlist_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& ex) {
    throw InvalidParams(std::string("netlist: parse error: ") + ex.what());
  }
  if (!j.is_object() || !j.contains("elements") || !j["elements"].is_array()) {
    throw InvalidParams("netlist: expected an object with an 'elements' array");
  }

  ElementSequence seq;
  if (j.contains("label")) {
    if (!j["label"].is_string()) {
      throw InvalidParams("netlist: 'label' must be a string");
    }
    seq.label = j["label"].get<std::string>();
  }

  for (const Json& e : j["elements"]) {
    if (!e.is_object() || !e.contains("kind") || !e["kind"].is_string()) {
      throw InvalidParams("netlist: element requires a string 'kind'");
    }
    const std::string kind = e["kind"].get<std::string>();
    if (kind == "BS12" || kind == "BS23") {
      require_channels(e, kind == "BS12" ? std::vector<int>{1, 2}
                                         : std::vector<int>{2, 3});
      const BsParams p = BsParams::canonical(require_number(e, "phi_t"),
                                             require_number(e, "theta"),
                                             require_number(e, "phi_r"));
      seq.elements.push_back(kind == "BS12" ? Element::bs12(p)
                                            : Element::bs23(p));
    } else if (kind == "Phase") {
      require_channels(e, {1, 2, 3});
      if (!e.contains("deltas") || !e["deltas"].is_array() ||
          e["deltas"].size() != 3) {
        throw InvalidParams("netlist: Phase requires a 3-entry 'deltas'");
      }
      std::array<double, 3> d{};
      for (int i = 0; i < 3; ++i) {
        if (!e["deltas"][static_cast<size_t>(i)].is_number()) {
          throw InvalidParams("netlist: 'deltas' entries must be numbers");
        }
        d[static_cast<size_t>(i)] =
            e["deltas"][static_cast<size_t>(i)].get<double>();
        if (!std::isfinite(d[static_cast<size_t>(i)])) {
          throw InvalidParams("netlist: non-finite 'deltas' entry");
        }
      }
      seq.elements.push_back(Element::phase(d[0], d[1], d[2]));
    } else {
      throw InvalidParams("netlist: unknown element kind '" + kind + "'");
    }
  }
  return seq;
}

}  // namespace triphase
