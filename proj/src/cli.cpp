// Copyright 2026 The qspforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qspforge/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <optional>
#include <thread>
#include <variant>

#include "CLI11.hpp"
#include "qspforge/io.hpp"

namespace qspforge {

namespace {

using io::Json;

enum class Outcome { Ok = 0, Io = 1, Precondition = 2 };

struct TaskResult {
  Json doc;
  Outcome outcome = Outcome::Ok;
};

struct CommonOptions {
  std::vector<std::string> inputs;
  std::string verify;
  double verify_tol = 1e-9;
  unsigned jobs = 1;
};

struct ConventionFlags {
  std::string basis;
  std::string algebra;
};

TaskResult run_guarded(const std::function<Json()> &task) {
  try {
    return {task(), Outcome::Ok};
  } catch (const Error &e) {
    return {io::error_to_json(e), e.is_io_error() ? Outcome::Io : Outcome::Precondition};
  } catch (const Json::exception &e) {
    return {io::error_to_json(Error(ErrorCode::Schema, e.what())), Outcome::Io};
  }
}

std::vector<TaskResult> run_batch(const std::vector<std::string> &inputs, unsigned jobs,
                                  const std::function<Json(const Json &)> &task) {
  std::vector<TaskResult> results(inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < inputs.size(); i = next++) {
      results[i] = run_guarded([&] { return task(io::load_json_file(inputs[i])); });
    }
  };
  const unsigned threads = std::clamp<unsigned>(jobs, 1, std::max<std::size_t>(1, inputs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto &t : pool) t.join();
  return results;
}

int finish(std::vector<TaskResult> results, const CommonOptions &opts, std::ostream &out,
           std::ostream &err) {
  Outcome worst = Outcome::Ok;
  for (const auto &r : results) {
    if (r.outcome == Outcome::Io) worst = Outcome::Io;
    if (r.outcome == Outcome::Precondition && worst == Outcome::Ok) worst = Outcome::Precondition;
  }
  Json doc;
  if (results.size() == 1) {
    doc = std::move(results.front().doc);
  } else {
    doc = Json::array();
    for (auto &r : results) doc.push_back(std::move(r.doc));
  }
  out << io::dump(doc);
  if (worst != Outcome::Ok) return static_cast<int>(worst);
  if (!opts.verify.empty()) {
    try {
      const Json expected = io::load_json_file(opts.verify);
      const std::string diff = io::first_difference(doc, expected, opts.verify_tol);
      if (!diff.empty()) {
        err << "verify: mismatch at " << diff << "\n";
        return 1;
      }
    } catch (const Error &e) {
      err << "verify: " << e.what() << "\n";
      return 1;
    }
  }
  return 0;
}

SignalConvention convention_from(const ConventionFlags &flags, Picture picture) {
  SignalConvention c;
  c.picture = picture;
  if (!flags.basis.empty()) c.basis = io::parse_basis(flags.basis);
  if (!flags.algebra.empty()) c.algebra = io::parse_algebra(flags.algebra);
  return c;
}

Picture picture_of(const PolynomialState &s) {
  return s.kind() == PolyKind::Laurent ? Picture::Laurent : Picture::Analytic;
}

Tolerances tolerances_from(const std::string &flag) {
  Tolerances tol;
  if (const char *env = std::getenv("QSPFORGE_TOL")) tol = parse_tolerances(env, tol);
  if (!flag.empty()) tol = parse_tolerances(flag, tol);
  return tol;
}

void add_common(CLI::App *sub, CommonOptions &opts, bool with_inputs) {
  if (with_inputs) sub->add_option("inputs", opts.inputs, "input JSON files")->required();
  sub->add_option("--verify", opts.verify, "expected output to compare against");
  sub->add_option("--verify-tol", opts.verify_tol, "numeric tolerance for --verify");
  sub->add_option("--jobs,-j", opts.jobs, "worker threads for several inputs")
      ->check(CLI::Range(1U, 256U));
}

// Subcommand bodies ---------------------------------------------------------

Json do_synth(const Json &doc, const std::string &family, const ConventionFlags &flags,
              const Tolerances &tol) {
  const PolynomialState state = io::state_from_json(doc, tol);
  std::string fam = family;
  if (fam.empty()) {
    if (state.dim() == 3) {
      fam = "three-dim";
    } else if (state.num_vars() == 1) {
      fam = state.kind() == PolyKind::Laurent ? "univariate-laurent" : "univariate-analytic";
    } else {
      throw Error(ErrorCode::InvalidArgument,
                  "no synthesis for bivariate qubit states; run check instead");
    }
  }
  if (fam == "three-dim") return io::protocol_to_json(decompose_3d(state, tol));
  if (fam == "univariate-analytic" || fam == "univariate-laurent") {
    const Picture picture = fam == "univariate-laurent" ? Picture::Laurent : Picture::Analytic;
    return io::protocol_to_json(synthesize_1d(state, convention_from(flags, picture), tol));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown synthesis family \"" + fam + "\"");
}

Json do_check(const Json &doc, const std::string &choices, const ConventionFlags &flags,
              const Tolerances &tol) {
  const PolynomialState state = io::state_from_json(doc, tol);
  if (state.dim() == 3) return io::report_to_json(check_extraction_conditions(state, tol));
  if (state.num_vars() == 1) {
    const DiagnosticReport report = classify_state_1d(state, tol);
    Json out = io::report_to_json(report);
    if (!flags.basis.empty() || !flags.algebra.empty()) {
      out["satisfies"] = satisfies(report, convention_from(flags, picture_of(state)));
    }
    return out;
  }
  DiagnosticReport report;
  std::optional<ChoiceVector> cv;
  if (!choices.empty()) {
    cv = io::parse_choices(choices);
    report = check_necessary_mqsp(state, *cv, convention_from(flags, picture_of(state)), tol);
  }
  const PolynomialState analytic = state.kind() == PolyKind::Laurent && cv
                                       ? choice_laurent_to_analytic(state, *cv)
                                       : state;
  const DiagnosticReport certificate = check_unimplementable(analytic, tol);
  report.verdicts.insert(report.verdicts.end(), certificate.verdicts.begin(),
                         certificate.verdicts.end());
  report.implementability = certificate.implementability;
  return io::report_to_json(report);
}

Json do_convert(const Json &doc, const std::string &target, const std::string &choices,
                std::optional<int> calls, const Tolerances &tol) {
  if (io::is_state_document(doc)) {
    const PolynomialState state = io::state_from_json(doc, tol);
    if (target != "analytic" && target != "laurent") {
      throw Error(ErrorCode::InvalidArgument, "states convert only to analytic or laurent");
    }
    if (state.num_vars() == 1) {
      return io::state_to_json(target == "analytic" ? laurent_to_analytic_1d(state)
                                                    : analytic_to_laurent_1d(state, calls));
    }
    if (choices.empty()) {
      throw Error(ErrorCode::InvalidArgument, "bivariate conversion needs --choices");
    }
    const ChoiceVector cv = io::parse_choices(choices);
    return io::state_to_json(target == "analytic" ? choice_laurent_to_analytic(state, cv)
                                                  : choice_analytic_to_laurent(state, cv));
  }
  io::AnyProtocol p = io::protocol_from_json(doc, tol);
  if (auto *uni = std::get_if<Protocol1D>(&p)) {
    if (target == "Wz" || target == "Wx") {
      return io::protocol_to_json(convert_convention_1d(*uni, io::parse_basis(target)));
    }
    if (target == "analytic" || target == "laurent") {
      uni->convention.picture = io::parse_picture(target);
      return io::protocol_to_json(*uni);
    }
  } else if (auto *choice = std::get_if<Protocol2DChoice>(&p)) {
    if (target == "three-dim") return io::protocol_to_json(embed_2d_in_3d(*choice));
    if (target == "analytic" || target == "laurent") {
      choice->picture = io::parse_picture(target);
      return io::protocol_to_json(*choice);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unsupported conversion to \"" + target + "\"");
}

Json do_qgamma(const Json &doc, const Tolerances &tol) {
  const QGammaResult r = q_gamma(io::state_from_json(doc, tol), tol);
  return {{"q", r.q},
          {"radius", r.q / 4},
          {"max_a", r.max_a},
          {"max_b", r.max_b},
          {"argmax_a", {r.argmax_a.first, r.argmax_a.second}},
          {"argmax_b", {r.argmax_b.first, r.argmax_b.second}},
          {"normalized_input", r.normalized_input}};
}

Json do_rand(const std::string &family, std::size_t steps, std::uint64_t seed,
             const ConventionFlags &flags, const std::string &picture) {
  if (family == "three-dim") return io::protocol_to_json(random_protocol_3d(steps, seed));
  if (family == "mqsp-choice") {
    const Picture pic = picture.empty() ? Picture::Analytic : io::parse_picture(picture);
    return io::protocol_to_json(random_protocol_2d_choice(steps, seed, pic));
  }
  if (family == "univariate-analytic" || family == "univariate-laurent") {
    const Picture pic = family == "univariate-laurent" ? Picture::Laurent : Picture::Analytic;
    return io::protocol_to_json(random_protocol_1d(convention_from(flags, pic), steps, seed));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family \"" + family + "\"");
}

}  // namespace

int cli_run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Evaluate, synthesize and diagnose quantum signal processing protocols"};
  app.name("qspforge");
  app.require_subcommand(1);
  std::string tol_flag;
  app.add_option("--tol", tol_flag, "tolerance overrides, e.g. norm=1e-8,rank=1e-10");

  CommonOptions opts;
  ConventionFlags flags;
  std::string family, choices, target, picture;
  std::optional<int> calls;
  std::size_t steps = 1;
  std::uint64_t seed = 0;

  auto *eval = app.add_subcommand("eval", "protocol -> polynomial state");
  add_common(eval, opts, true);

  auto *synth = app.add_subcommand("synth", "polynomial state -> protocol");
  add_common(synth, opts, true);
  synth->add_option("--family", family, "three-dim, univariate-analytic or univariate-laurent");
  synth->add_option("--basis", flags.basis, "Wz or Wx");
  synth->add_option("--algebra", flags.algebra, "full, x-rotations or z-rotations");

  auto *check = app.add_subcommand("check", "polynomial state -> diagnostic report");
  add_common(check, opts, true);
  check->add_option("--choices", choices, "signal choices such as abba");
  check->add_option("--basis", flags.basis, "Wz or Wx");
  check->add_option("--algebra", flags.algebra, "full, x-rotations or z-rotations");

  auto *convert = app.add_subcommand("convert", "change picture, basis or embed");
  add_common(convert, opts, true);
  convert->add_option("--to", target, "analytic, laurent, Wz, Wx or three-dim")->required();
  convert->add_option("--choices", choices, "signal choices for bivariate states");
  convert->add_option("--calls", calls, "number of calls for univariate analytic -> laurent");

  auto *qgamma = app.add_subcommand("qgamma", "unimplementability margin of a qubit state");
  add_common(qgamma, opts, true);

  auto *rand = app.add_subcommand("rand", "seeded random protocol");
  add_common(rand, opts, false);
  rand->add_option("--family", family, "three-dim, mqsp-choice, univariate-analytic, ...")
      ->required();
  rand->add_option("--steps", steps, "number of signal calls")->required();
  rand->add_option("--seed", seed, "random seed")->required();
  rand->add_option("--basis", flags.basis, "Wz or Wx");
  rand->add_option("--algebra", flags.algebra, "full, x-rotations or z-rotations");
  rand->add_option("--picture", picture, "analytic or laurent (mqsp-choice)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  Tolerances tol;
  try {
    tol = tolerances_from(tol_flag);
  } catch (const Error &e) {
    err << e.what() << "\n";
    return 1;
  }

  if (rand->parsed()) {
    return finish({run_guarded([&] { return do_rand(family, steps, seed, flags, picture); })},
                  opts, out, err);
  }
  std::function<Json(const Json &)> task;
  if (eval->parsed()) {
    task = [&](const Json &doc) {
      return io::state_to_json(io::evaluate(io::protocol_from_json(doc, tol)));
    };
  } else if (synth->parsed()) {
    task = [&](const Json &doc) { return do_synth(doc, family, flags, tol); };
  } else if (check->parsed()) {
    task = [&](const Json &doc) { return do_check(doc, choices, flags, tol); };
  } else if (convert->parsed()) {
    task = [&](const Json &doc) { return do_convert(doc, target, choices, calls, tol); };
  } else {
    task = [&](const Json &doc) { return do_qgamma(doc, tol); };
  }
  return finish(run_batch(opts.inputs, opts.jobs, task), opts, out, err);
}

}  // namespace qspforge
