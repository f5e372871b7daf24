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

// Command implementations behind the `qprice` executable.
//
//   qprice state       --config <path>   distributions + summary of the initial state
//   qprice uncertainty --config <path>   Robertson report of the initial state
//   qprice spectrum    --n <N> [--json]  eigenvalues of [P, O]
//   qprice evolve      --config <path>   Strang trajectory
//
// Exit codes: 0 success, 1 usage or schema error, 2 numerical invariant
// violated, 3 I/O failure.
//
// CSV layout. Distributions: step,t,n,prob_price,prob_owner. Summary:
// step,t,mean_price,mean_owner,delta_price,delta_owner,product,bound,norm_error.
// With an output path the distributions go to <path> and the summary to
// <stem>_summary<ext>; on standard output the summary block follows the
// distributions after one empty line. Trailing '#' lines carry the run status.

#pragma once

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "errors.hpp"
#include "evolution.hpp"
#include "format.hpp"
#include "fourier.hpp"
#include "lattice.hpp"
#include "operators.hpp"
#include "scenario.hpp"

namespace qprice::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kIo = 3 };

struct Context {
    std::ostream& out;
    std::ostream& err;
    bool quiet = false;
};

inline constexpr const char* kDistributionsHeader = "step,t,n,prob_price,prob_owner";
inline constexpr const char* kSummaryHeader =
    "step,t,mean_price,mean_owner,delta_price,delta_owner,product,bound,norm_error";

/// "<dir>/<stem>_summary<ext>" for "<dir>/<stem><ext>".
inline std::string summary_path(const std::string& path) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + "_summary";
    return path.substr(0, dot) + "_summary" + path.substr(dot);
}

namespace detail {

/// Owns the output files of one command, or borrows the context stream.
class Sinks {
  public:
    Sinks(const OutputSpec& spec, Context& ctx, bool split_summary) : ctx_(ctx) {
        if (spec.path.empty()) return;
        main_ = open(spec.path);
        if (split_summary) summary_ = open(summary_path(spec.path));
    }

    std::ostream& main() { return main_ ? *main_ : ctx_.out; }
    std::ostream& summary() { return summary_ ? *summary_ : main(); }
    bool shared() const { return !summary_; }

    void finish() {
        for (auto* f : {main_.get(), summary_.get()}) {
            if (f == nullptr) continue;
            f->flush();
            if (!*f) throw IoError("failed writing output file");
        }
        ctx_.out.flush();
    }

  private:
    static std::unique_ptr<std::ofstream> open(const std::string& path) {
        auto f = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
        if (!*f) throw IoError("cannot open output file '" + path + "'");
        return f;
    }

    Context& ctx_;
    std::unique_ptr<std::ofstream> main_;
    std::unique_ptr<std::ofstream> summary_;
};

struct Row {
    long step;
    double t;
    const NormalizedState& state;
    double mean_price, mean_owner, delta_price, delta_owner, product, bound, norm_error;
};

inline std::vector<double> to_vector(const ProbabilityVector& p) { return {p.probs().begin(), p.probs().end()}; }

inline void write_distribution_rows(std::ostream& os, const Row& r) {
    const ProbabilityVector price = price_distribution(r.state);
    const ProbabilityVector owner = owner_distribution(r.state);
    const std::string t = format_number(r.t);
    for (std::size_t n = 0; n < price.size(); ++n) {
        os << r.step << ',' << t << ',' << n << ',' << format_number(price[n]) << ',' << format_number(owner[n])
           << '\n';
    }
}

inline std::string summary_fields(const Row& r) {
    std::string s = std::to_string(r.step) + ',' + format_number(r.t);
    for (double x : {r.mean_price, r.mean_owner, r.delta_price, r.delta_owner, r.product, r.bound, r.norm_error}) {
        s += ',';
        s += format_number(x);
    }
    return s;
}

inline std::string json_array(const std::vector<double>& xs) {
    std::string s = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ',';
        s += format_number(xs[i]);
    }
    return s + "]";
}

inline std::string json_record(const Row& r) {
    std::ostringstream os;
    os << "{\"step\":" << r.step << ",\"t\":" << format_number(r.t)
       << ",\"mean_price\":" << format_number(r.mean_price) << ",\"mean_owner\":" << format_number(r.mean_owner)
       << ",\"delta_price\":" << format_number(r.delta_price) << ",\"delta_owner\":" << format_number(r.delta_owner)
       << ",\"product\":" << format_number(r.product) << ",\"bound\":" << format_number(r.bound)
       << ",\"norm_error\":" << format_number(r.norm_error)
       << ",\"prob_price\":" << json_array(to_vector(price_distribution(r.state)))
       << ",\"prob_owner\":" << json_array(to_vector(owner_distribution(r.state))) << "}";
    return os.str();
}

/// Streams records in either format. CSV output is split into a
/// distributions table and a summary table; JSON is a single document.
class RecordWriter {
  public:
    RecordWriter(const OutputSpec& spec, Context& ctx)
        : format_(spec.format), sinks_(spec, ctx, spec.format == OutputFormat::csv) {
        if (format_ == OutputFormat::csv) {
            sinks_.main() << kDistributionsHeader << '\n';
        } else {
            sinks_.main() << "{\"records\":[";
        }
    }

    void add(const Row& r) {
        if (format_ == OutputFormat::csv) {
            write_distribution_rows(sinks_.main(), r);
            summary_rows_.push_back(summary_fields(r));
        } else {
            sinks_.main() << (count_ ? ",\n" : "\n") << json_record(r);
        }
        ++count_;
    }

    /// `status` is a trailing note such as "complete" or "truncated ...".
    void close(const std::string& status, double max_norm_error, bool truncated) {
        if (format_ == OutputFormat::csv) {
            if (truncated) sinks_.main() << "# " << status << '\n';
            std::ostream& os = sinks_.summary();
            if (sinks_.shared()) os << '\n';
            os << kSummaryHeader << '\n';
            for (const auto& line : summary_rows_) os << line << '\n';
            os << "# " << status << ", records=" << count_ << ", max_norm_error=" << format_number(max_norm_error)
               << '\n';
        } else {
            sinks_.main() << "\n],\"status\":\"" << status << "\",\"truncated\":" << (truncated ? "true" : "false")
                          << ",\"max_norm_error\":" << format_number(max_norm_error) << "}\n";
        }
        sinks_.finish();
    }

  private:
    OutputFormat format_;
    Sinks sinks_;
    std::vector<std::string> summary_rows_;
    long count_ = 0;
};

} // namespace detail

/// Price and owner distributions of the initial state plus its summary row.
inline int cmd_state(const Scenario& s, Context& ctx) {
    const NormalizedState state = initial_state(s);
    const UncertaintyReport rep = uncertainty_product_report(state);
    const double t = s.evolution ? s.evolution->params.t0() : 0.0;

    detail::RecordWriter w(s.output, ctx);
    w.add({0, t, state, rep.mean_price, rep.mean_owner, rep.delta_price, rep.delta_owner, rep.product, rep.bound,
           state.norm_error()});
    w.close("complete", state.norm_error(), false);
    if (!ctx.quiet) {
        ctx.err << "state: N=" << s.size << " mean_price=" << format_number(rep.mean_price)
                << " mean_owner=" << format_number(rep.mean_owner) << " product=" << format_number(rep.product)
                << " bound=" << format_number(rep.bound) << '\n';
    }
    return kOk;
}

/// Robertson report for the initial state: one CSV row or a JSON object.
inline int cmd_uncertainty(const Scenario& s, Context& ctx) {
    const NormalizedState state = initial_state(s);
    const UncertaintyReport r = uncertainty_product_report(state);

    detail::Sinks sinks(s.output, ctx, false);
    std::ostream& os = sinks.main();
    if (s.output.format == OutputFormat::csv) {
        os << "mean_price,mean_owner,delta_price,delta_owner,product,bound,saturated\n"
           << format_number(r.mean_price) << ',' << format_number(r.mean_owner) << ','
           << format_number(r.delta_price) << ',' << format_number(r.delta_owner) << ','
           << format_number(r.product) << ',' << format_number(r.bound) << ',' << (r.saturated ? "true" : "false")
           << '\n';
    } else {
        os << "{\"mean_price\":" << format_number(r.mean_price) << ",\"mean_owner\":" << format_number(r.mean_owner)
           << ",\"delta_price\":" << format_number(r.delta_price)
           << ",\"delta_owner\":" << format_number(r.delta_owner) << ",\"product\":" << format_number(r.product)
           << ",\"bound\":" << format_number(r.bound) << ",\"saturated\":" << (r.saturated ? "true" : "false")
           << "}\n";
    }
    sinks.finish();
    return kOk;
}

/// Rows "index,imag_part" (1-based index, ascending), or a JSON object
/// with the array and the eigenpair residual.
inline int cmd_spectrum(std::size_t size, bool json, Context& ctx) {
    if (size < 2) {
        ctx.err << "spectrum: --n must be at least 2\n";
        return kUsage;
    }
    const SpectrumResult spec = commutator_spectrum(size);
    const std::vector<double> im = spec.imaginary_parts();
    if (json) {
        ctx.out << "{\"N\":" << size << ",\"imag_parts\":" << detail::json_array(im)
                << ",\"residual\":" << format_number(spec.residual) << "}\n";
    } else {
        ctx.out << "index,imag_part\n";
        for (std::size_t j = 0; j < im.size(); ++j) ctx.out << (j + 1) << ',' << format_number(im[j]) << '\n';
    }
    ctx.out.flush();
    if (!ctx.quiet) {
        ctx.err << "spectrum: N=" << size << " sweeps=" << spec.sweeps << " residual=" << format_number(spec.residual)
                << " N/(2pi)=" << format_number(commutator_scale(size)) << '\n';
    }
    return kOk;
}

/// Streams the trajectory. A conservation violation keeps everything
/// written so far, appends a truncation marker and exits with kNumerical.
inline int cmd_evolve(const Scenario& s, Context& ctx) {
    if (!s.evolution) {
        ctx.err << "evolve: scenario has no 'evolution' block\n";
        return kUsage;
    }
    const NormalizedState state = initial_state(s);
    detail::RecordWriter w(s.output, ctx);
    double max_err = 0.0;
    try {
        evolve(state, s.evolution->params, s.evolution->potential, s.output.record_every,
               [&](const TrajectoryRecord& r) {
                   max_err = std::max(max_err, r.norm_error);
                   w.add({r.step, r.time, r.state, r.mean_price, r.mean_owner, r.delta_price, r.delta_owner,
                          r.uncertainty_product, r.uncertainty_bound, r.norm_error});
               });
    } catch (const ConservationViolation& e) {
        max_err = std::max(max_err, e.norm_error());
        w.close("truncated at step " + std::to_string(e.step()) + " t=" + format_number(e.time()) +
                    " norm_error=" + format_number(e.norm_error()),
                max_err, true);
        ctx.err << "evolve: " << e.what() << '\n';
        return kNumerical;
    }
    w.close("complete", max_err, false);
    if (!ctx.quiet) {
        ctx.err << "evolve: steps=" << s.evolution->params.steps() << " max_norm_error=" << format_number(max_err)
                << '\n';
    }
    return kOk;
}

namespace detail {

template <class Fn>
int guarded(Context& ctx, Fn&& fn) {
    try {
        return fn();
    } catch (const ScenarioError& e) {
        ctx.err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        ctx.err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const InvariantViolation& e) {
        ctx.err << "numerical invariant violated: " << e.what() << '\n';
        return kNumerical;
    } catch (const ConvergenceError& e) {
        ctx.err << "numerical invariant violated: " << e.what() << '\n';
        return kNumerical;
    } catch (const Error& e) {
        ctx.err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

} // namespace detail

/// Parses argv and dispatches. argv[0] is the program name.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite quantum model of stock price and ownership on Z_N", "qprice"};
    app.require_subcommand(1);
    app.fallthrough(); // lets --quiet follow the subcommand name
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "Suppress the human-readable status line on stderr");

    std::string config;
    auto* state_cmd = app.add_subcommand("state", "Price/owner distributions and summary of the scenario's initial state");
    state_cmd->add_option("--config", config, "Scenario file")->required();
    auto* unc_cmd = app.add_subcommand("uncertainty", "Uncertainty product and Robertson bound of the initial state");
    unc_cmd->add_option("--config", config, "Scenario file")->required();
    auto* evolve_cmd = app.add_subcommand("evolve", "Evolve the initial state and record observables");
    evolve_cmd->add_option("--config", config, "Scenario file")->required();

    long n = 0;
    bool json = false;
    auto* spec_cmd = app.add_subcommand("spectrum", "Eigenvalues of the price/ownership commutator");
    spec_cmd->add_option("--n", n, "Lattice size N (>= 2)")->required();
    spec_cmd->add_flag("--json", json, "Emit JSON instead of CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return kUsage;
    }

    Context ctx{out, err, quiet};
    if (spec_cmd->parsed()) {
        if (n < 2) {
            err << "usage error: --n must be at least 2\n";
            return kUsage;
        }
        return detail::guarded(ctx, [&] { return cmd_spectrum(static_cast<std::size_t>(n), json, ctx); });
    }
    return detail::guarded(ctx, [&] {
        const Scenario s = load_scenario(config);
        if (state_cmd->parsed()) return cmd_state(s, ctx);
        if (unc_cmd->parsed()) return cmd_uncertainty(s, ctx);
        return cmd_evolve(s, ctx);
    });
}

} // namespace qprice::cli
