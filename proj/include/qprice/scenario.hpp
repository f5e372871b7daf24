// Copyright 2026 The qprice Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Scenario files. JSON with the layout
//
//   {
//     "N": 21,
//     "state": {"type": "delta", "m": 7}
//            | {"type": "gaussian", "kappa": 0.6667, "n0": 7, "k0": 14}
//            | {"type": "custom", "re": [...], "im": [...]},
//     "evolution": {                                   // optional
//       "mu": 1.0, "dt": 0.001, "steps": 1000, "t0": 0.0,
//       "potential": {"type": "zero"}
//                  | {"type": "harmonic", "center": 10, "omega": 0.1}
//                  | {"type": "linear", "slope": 0.5}
//                  | {"type": "tabulated", "values": [...]}
//                  | {"type": "modulated", "base": {...}, "amplitude": 0.2,
//                     "angular_frequency": 3.0}
//     },
//     "output": {"format": "csv", "path": "out.csv", "record_every": 10}  // optional
//   }
//
// Unknown keys are rejected at every level. "t0" defaults to 0, "im" to all
// zeros, and the whole "output" block to csv on standard output with
// record_every = 1.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "evolution.hpp"
#include "lattice.hpp"
#include "states.hpp"

namespace qprice {

/// Malformed scenario text. `field()` is the dotted path of the offending
/// key ("state.n0"); line/column are set for syntax errors only.
class ScenarioError : public Error {
  public:
    enum class Kind { syntax, schema, range };

    ScenarioError(Kind kind, std::string field, const std::string& message, std::size_t line = 0,
                  std::size_t column = 0)
        : Error(describe(kind, field, message, line, column)),
          kind_(kind),
          field_(std::move(field)),
          line_(line),
          column_(column) {}

    Kind kind() const noexcept { return kind_; }
    const std::string& field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    static std::string describe(Kind kind, const std::string& field, const std::string& message, std::size_t line,
                                std::size_t column) {
        switch (kind) {
        case Kind::syntax:
            return "syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                   message;
        case Kind::schema:
            return "schema violation at '" + field + "': " + message;
        case Kind::range:
            return "range violation at '" + field + "': " + message;
        }
        return message;
    }

    Kind kind_;
    std::string field_;
    std::size_t line_;
    std::size_t column_;
};

struct DeltaSpec {
    std::size_t m;
    friend bool operator==(const DeltaSpec&, const DeltaSpec&) = default;
};

struct GaussianSpec {
    double kappa;
    std::size_t n0;
    std::size_t k0;
    friend bool operator==(const GaussianSpec&, const GaussianSpec&) = default;
};

/// Unnormalized amplitudes, real and imaginary parts kept apart.
struct CustomSpec {
    std::vector<double> re;
    std::vector<double> im;
    friend bool operator==(const CustomSpec&, const CustomSpec&) = default;
};

using InitialStateSpec = std::variant<DeltaSpec, GaussianSpec, CustomSpec>;

struct EvolutionSpec {
    EvolutionParams params;
    Potential potential;
    friend bool operator==(const EvolutionSpec&, const EvolutionSpec&) = default;
};

enum class OutputFormat { csv, json };

struct OutputSpec {
    OutputFormat format = OutputFormat::csv;
    /// Empty means standard output.
    std::string path;
    long record_every = 1;
    friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct Scenario {
    std::size_t size = 1;
    InitialStateSpec initial_state = DeltaSpec{0};
    std::optional<EvolutionSpec> evolution;
    OutputSpec output;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Builds the initial state a validated scenario describes.
inline NormalizedState initial_state(const Scenario& s) {
    return std::visit(
        [&](const auto& spec) -> NormalizedState {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, DeltaSpec>) {
                return delta_state(spec.m, s.size);
            } else if constexpr (std::is_same_v<T, GaussianSpec>) {
                return gaussian_packet(PacketParams(ThetaParams(spec.kappa, s.size), spec.n0, spec.k0));
            } else {
                std::vector<Complex> v(s.size);
                for (std::size_t n = 0; n < s.size; ++n) v[n] = {spec.re[n], spec.im[n]};
                return normalize(LatticeFunction(std::move(v)));
            }
        },
        s.initial_state);
}

namespace detail {

using nlohmann::json;

inline std::string join_path(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
}

/// Strict view of one JSON object: every key must be consumed.
class ObjectReader {
  public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j.is_object()) throw ScenarioError(ScenarioError::Kind::schema, display(), "expected an object");
    }

    void allow_only(std::initializer_list<const char*> keys) const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            bool known = false;
            for (const char* k : keys) known = known || it.key() == k;
            if (!known) throw ScenarioError(ScenarioError::Kind::schema, field(it.key()), "unknown field");
        }
    }

    bool has(const char* key) const { return j_.contains(key); }

    const json& at(const char* key) const {
        if (!j_.contains(key)) throw ScenarioError(ScenarioError::Kind::schema, field(key), "missing required field");
        return j_.at(key);
    }

    std::string field(const std::string& key) const { return join_path(path_, key); }

    double number(const char* key) const {
        const json& v = at(key);
        if (!v.is_number()) throw ScenarioError(ScenarioError::Kind::schema, field(key), "expected a number");
        return v.get<double>();
    }

    std::int64_t integer(const char* key) const {
        const json& v = at(key);
        if (!v.is_number_integer()) throw ScenarioError(ScenarioError::Kind::schema, field(key), "expected an integer");
        if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
            throw ScenarioError(ScenarioError::Kind::range, field(key), "integer too large");
        }
        return v.get<std::int64_t>();
    }

    std::string string(const char* key) const {
        const json& v = at(key);
        if (!v.is_string()) throw ScenarioError(ScenarioError::Kind::schema, field(key), "expected a string");
        return v.get<std::string>();
    }

    std::vector<double> numbers(const char* key) const {
        const json& v = at(key);
        if (!v.is_array()) throw ScenarioError(ScenarioError::Kind::schema, field(key), "expected an array of numbers");
        std::vector<double> out;
        out.reserve(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) {
                throw ScenarioError(ScenarioError::Kind::schema, field(key) + "[" + std::to_string(i) + "]",
                                    "expected a number");
            }
            out.push_back(v[i].get<double>());
        }
        return out;
    }

    const std::string& path() const noexcept { return path_; }

  private:
    std::string display() const { return path_.empty() ? "<root>" : path_; }

    const json& j_;
    std::string path_;
};

inline std::size_t index_in_range(const ObjectReader& r, const char* key, std::size_t size) {
    const std::int64_t v = r.integer(key);
    if (v < 0 || static_cast<std::uint64_t>(v) >= size) {
        throw ScenarioError(ScenarioError::Kind::range, r.field(key),
                            "value " + std::to_string(v) + " outside [0, " + std::to_string(size) + ")");
    }
    return static_cast<std::size_t>(v);
}

inline InitialStateSpec parse_state(const json& j, std::size_t size) {
    const ObjectReader r(j, "state");
    const std::string type = r.string("type");
    if (type == "delta") {
        r.allow_only({"type", "m"});
        return DeltaSpec{index_in_range(r, "m", size)};
    }
    if (type == "gaussian") {
        r.allow_only({"type", "kappa", "n0", "k0"});
        const double kappa = r.number("kappa");
        if (!(kappa > 0.0)) throw ScenarioError(ScenarioError::Kind::range, r.field("kappa"), "must be positive");
        return GaussianSpec{kappa, index_in_range(r, "n0", size), index_in_range(r, "k0", size)};
    }
    if (type == "custom") {
        r.allow_only({"type", "re", "im"});
        CustomSpec c{r.numbers("re"), {}};
        c.im = r.has("im") ? r.numbers("im") : std::vector<double>(c.re.size(), 0.0);
        if (c.re.size() != size) {
            throw ScenarioError(ScenarioError::Kind::range, r.field("re"),
                                "expected " + std::to_string(size) + " entries, got " + std::to_string(c.re.size()));
        }
        if (c.im.size() != size) {
            throw ScenarioError(ScenarioError::Kind::range, r.field("im"),
                                "expected " + std::to_string(size) + " entries, got " + std::to_string(c.im.size()));
        }
        double total = 0.0;
        for (std::size_t n = 0; n < size; ++n) total += c.re[n] * c.re[n] + c.im[n] * c.im[n];
        if (!(total > 0.0)) throw ScenarioError(ScenarioError::Kind::range, r.field("re"), "amplitudes have zero norm");
        return c;
    }
    throw ScenarioError(ScenarioError::Kind::schema, r.field("type"),
                        "unknown state type '" + type + "' (expected delta, gaussian or custom)");
}

inline Potential parse_potential(const json& j, const std::string& path, std::size_t size) {
    const ObjectReader r(j, path);
    const std::string type = r.string("type");
    if (type == "zero") {
        r.allow_only({"type"});
        return Potential::zero();
    }
    if (type == "harmonic") {
        r.allow_only({"type", "center", "omega"});
        return Potential::harmonic(r.number("center"), r.number("omega"));
    }
    if (type == "linear") {
        r.allow_only({"type", "slope"});
        return Potential::linear(r.number("slope"));
    }
    if (type == "tabulated") {
        r.allow_only({"type", "values"});
        std::vector<double> values = r.numbers("values");
        if (values.size() != size) {
            throw ScenarioError(ScenarioError::Kind::range, r.field("values"),
                                "expected " + std::to_string(size) + " entries, got " + std::to_string(values.size()));
        }
        return Potential::tabulated(std::move(values));
    }
    if (type == "modulated") {
        r.allow_only({"type", "base", "amplitude", "angular_frequency"});
        Potential base = parse_potential(r.at("base"), r.field("base"), size);
        return Potential::modulated(std::move(base), r.number("amplitude"), r.number("angular_frequency"));
    }
    throw ScenarioError(ScenarioError::Kind::schema, r.field("type"),
                        "unknown potential type '" + type + "' (expected zero, harmonic, linear, tabulated or modulated)");
}

inline EvolutionSpec parse_evolution(const json& j, std::size_t size) {
    const ObjectReader r(j, "evolution");
    r.allow_only({"mu", "dt", "steps", "t0", "potential"});
    const double mu = r.number("mu");
    if (!(mu > 0.0)) throw ScenarioError(ScenarioError::Kind::schema, r.field("mu"), "must be positive");
    const double dt = r.number("dt");
    if (!(dt > 0.0)) throw ScenarioError(ScenarioError::Kind::schema, r.field("dt"), "must be positive");
    const std::int64_t steps = r.integer("steps");
    if (steps < 1) throw ScenarioError(ScenarioError::Kind::schema, r.field("steps"), "must be at least 1");
    const double t0 = r.has("t0") ? r.number("t0") : 0.0;
    Potential v = parse_potential(r.at("potential"), r.field("potential"), size);
    return EvolutionSpec{EvolutionParams(mu, dt, static_cast<long>(steps), t0), std::move(v)};
}

inline OutputSpec parse_output(const json& j) {
    const ObjectReader r(j, "output");
    r.allow_only({"format", "path", "record_every"});
    OutputSpec out;
    if (r.has("format")) {
        const std::string f = r.string("format");
        if (f == "csv") {
            out.format = OutputFormat::csv;
        } else if (f == "json") {
            out.format = OutputFormat::json;
        } else {
            throw ScenarioError(ScenarioError::Kind::schema, r.field("format"), "expected 'csv' or 'json'");
        }
    }
    if (r.has("path")) out.path = r.string("path");
    if (r.has("record_every")) {
        const std::int64_t every = r.integer("record_every");
        if (every < 1) throw ScenarioError(ScenarioError::Kind::schema, r.field("record_every"), "must be at least 1");
        out.record_every = static_cast<long>(every);
    }
    return out;
}

inline void line_and_column(std::string_view text, std::size_t byte, std::size_t& line, std::size_t& column) {
    line = 1;
    column = 1;
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
}

inline json potential_to_json(const Potential& v) {
    switch (v.kind()) {
    case PotentialKind::zero:
        return {{"type", "zero"}};
    case PotentialKind::harmonic: {
        const auto& h = v.as<Potential::Harmonic>();
        return {{"type", "harmonic"}, {"center", h.center}, {"omega", h.omega}};
    }
    case PotentialKind::linear:
        return {{"type", "linear"}, {"slope", v.as<Potential::Linear>().slope}};
    case PotentialKind::tabulated:
        return {{"type", "tabulated"}, {"values", v.as<Potential::Tabulated>().values}};
    case PotentialKind::modulated: {
        const auto& m = v.as<Potential::Modulated>();
        return {{"type", "modulated"},
                {"base", potential_to_json(*m.base)},
                {"amplitude", m.amplitude},
                {"angular_frequency", m.angular_frequency}};
    }
    }
    return {};
}

} // namespace detail

/// Parses and fully validates scenario text. Throws ScenarioError.
inline Scenario parse_scenario(std::string_view text) {
    using detail::json;
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 0, column = 0;
        detail::line_and_column(text, e.byte, line, column);
        throw ScenarioError(ScenarioError::Kind::syntax, "", e.what(), line, column);
    }

    const detail::ObjectReader r(root, "");
    r.allow_only({"N", "state", "evolution", "output"});

    Scenario s;
    const std::int64_t n = r.integer("N");
    if (n < 1) throw ScenarioError(ScenarioError::Kind::range, "N", "must be at least 1");
    if (n > 100000) throw ScenarioError(ScenarioError::Kind::range, "N", "must not exceed 100000");
    s.size = static_cast<std::size_t>(n);
    s.initial_state = detail::parse_state(r.at("state"), s.size);
    if (r.has("evolution")) s.evolution = detail::parse_evolution(r.at("evolution"), s.size);
    if (r.has("output")) s.output = detail::parse_output(r.at("output"));
    return s;
}

/// JSON text that parse_scenario() maps back to an equal Scenario.
inline std::string serialize_scenario(const Scenario& s) {
    using detail::json;
    json root;
    root["N"] = s.size;
    root["state"] = std::visit(
        [](const auto& spec) -> json {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, DeltaSpec>) {
                return {{"type", "delta"}, {"m", spec.m}};
            } else if constexpr (std::is_same_v<T, GaussianSpec>) {
                return {{"type", "gaussian"}, {"kappa", spec.kappa}, {"n0", spec.n0}, {"k0", spec.k0}};
            } else {
                return {{"type", "custom"}, {"re", spec.re}, {"im", spec.im}};
            }
        },
        s.initial_state);
    if (s.evolution) {
        const EvolutionParams& p = s.evolution->params;
        root["evolution"] = {{"mu", p.mu()},
                             {"dt", p.dt()},
                             {"steps", p.steps()},
                             {"t0", p.t0()},
                             {"potential", detail::potential_to_json(s.evolution->potential)}};
    }
    json out = {{"format", s.output.format == OutputFormat::csv ? "csv" : "json"},
                {"record_every", s.output.record_every}};
    if (!s.output.path.empty()) out["path"] = s.output.path;
    root["output"] = out;
    return root.dump(2) + "\n";
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read scenario file '" + path + "'");
    return parse_scenario(buf.str());
}

} // namespace qprice
