//
// Copyright 2026 The Littlestone Lab Authors
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
//

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "littlestone/io.hpp"
#include "littlestone/littlestone.hpp"

namespace littlestone::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

// "thresholds:7", "singletons:5", "powerset:3", "random:m,h,seed", or a file.
inline ConceptClass load_class(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string name = spec.substr(0, colon);
    std::vector<std::uint64_t> params;
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        params.push_back(std::stoull(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw InvalidArgument("bad generator parameter '" + item + "' in '" + spec + "'");
      }
    }
    auto need = [&](std::size_t k) {
      if (params.size() != k) {
        throw InvalidArgument("generator '" + name + "' takes " + std::to_string(k) + " parameter(s)");
      }
    };
    if (name == "thresholds") {
      need(1);
      return make_thresholds(params[0]);
    }
    if (name == "singletons") {
      need(1);
      return make_singletons(params[0]);
    }
    if (name == "powerset") {
      need(1);
      return make_powerset(params[0]);
    }
    if (name == "random") {
      need(3);
      return make_random_class(params[0], params[1], params[2]);
    }
    throw InvalidArgument("unknown generator '" + name + "' (expected thresholds, singletons, powerset or random)");
  }
  return io::read_class(io::read_file(spec));
}

inline LearnerFactory learner_by_name(const std::string& name, const ConceptClass& c,
                                      std::shared_ptr<const LdimEngine> engine, std::size_t constant_index) {
  if (name == "soa") return soa_factory(engine);
  if (name == "soa-eager") return soa_factory(engine, Soa::Mode::kEager);
  if (name == "first-consistent") return first_consistent_factory(engine);
  if (name == "gibbs") return gibbs_factory(engine);
  if (name == "constant") {
    if (constant_index >= c.size()) throw InvalidArgument("--hypothesis index outside the class");
    return constant_factory(c[constant_index]);
  }
  throw InvalidArgument("unknown learner '" + name + "' (expected soa, soa-eager, first-consistent, gibbs, constant)");
}

inline std::vector<std::size_t> parse_points(const std::string& list, std::size_t domain_size) {
  std::vector<std::size_t> out;
  if (list == "all") {
    for (std::size_t x = 0; x < domain_size; ++x) out.push_back(x);
    return out;
  }
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw InvalidArgument("bad point '" + item + "'");
    }
  }
  return out;
}

inline std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

struct Options {
  std::string class_spec;
  std::uint64_t seed = kDefaultSeed;
  std::size_t trials = 100;
  std::size_t horizon = 1000;
  std::vector<std::size_t> n;
  std::size_t big_n = 4096;
  double eps = 0.25;
  double delta = 0.05;
  std::size_t budget = 0;
  std::string format = "json";
  std::string cert_path, seq_path, dist_path, cover_path, graph_path;
  std::string learner = "soa";
  std::string adversary = "iid";
  std::string points = "all";
  std::string b_set;
  std::size_t hypothesis = 0;
  std::optional<std::size_t> target;
  std::size_t cap = 10'000;
  bool wrap = false;
  bool bits = false;
  bool trace = false;
  std::string emit_tree, emit_half_graph, emit_shattered;
};

namespace detail {

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  f << text;
}

inline std::size_t single_n(const Options& o, std::size_t fallback) {
  if (o.n.empty()) return fallback;
  if (o.n.size() != 1) throw InvalidArgument("this subcommand takes a single --n");
  return o.n.front();
}

inline FiniteDistribution distribution_for(const Options& o, const ConceptClass& c) {
  if (!o.dist_path.empty()) return io::read_distribution(io::read_file(o.dist_path), c.domain_size());
  if (!o.target) throw InvalidArgument("pass --dist FILE or --target INDEX");
  if (*o.target >= c.size()) throw InvalidArgument("--target index outside the class");
  std::vector<std::size_t> all(c.domain_size());
  for (std::size_t x = 0; x < all.size(); ++x) all[x] = x;
  return FiniteDistribution::uniform_on_graph(c[*o.target], all);
}

inline int cmd_dims(const Options& o, std::ostream& out) {
  const ConceptClass c = load_class(o.class_spec);
  const int vc = vc_dim(c);
  const int ld = ldim(c);
  const ThresholdDimResult thr = threshold_dim(c);
  if (!o.emit_tree.empty()) write_text(o.emit_tree, io::tree_json(ldim_certificate(c)).dump(2) + "\n");
  if (!o.emit_half_graph.empty()) write_text(o.emit_half_graph, io::half_graph_json(thr.cert).dump(2) + "\n");
  if (!o.emit_shattered.empty()) write_text(o.emit_shattered, io::shattered_set_json(vc_certificate(c)).dump(2) + "\n");
  if (o.format == "csv") {
    out << "vc,ldim,threshold,threshold_exact\n" << vc << ',' << ld << ',' << thr.k << ',' << (thr.exact ? 1 : 0) << "\n";
    return kOk;
  }
  io::Json j{{"vc", vc}, {"ldim", ld}, {"threshold", thr.k}};
  if (!thr.exact) j["threshold_lower_bound"] = true;
  out << j.dump() << "\n";
  return kOk;
}

inline int cmd_certify(const Options& o, std::ostream& out, std::ostream& err) {
  const ConceptClass c = load_class(o.class_spec);
  const std::string text = io::read_file(o.cert_path);
  const io::Json j = io::detail::parse_text(text);
  CertificateCheck check;
  std::string kind;
  io::Json extra;
  if (j.is_object() && (j.contains("point") || j.contains("hypothesis"))) {
    kind = "tree";
    const MistakeTreeCert t = io::read_tree(text, c.domain_size());
    check = verify_mistake_tree(c, t);
    extra["depth"] = t.depth;
  } else if (j.is_object() && j.contains("witnesses")) {
    kind = "shattered-set";
    const ShatteredSetCert s = io::read_shattered_set(text, c.domain_size());
    check = verify_shattered_set(c, s);
    extra["size"] = s.points.size();
  } else if (j.is_object() && j.contains("points") && j.contains("hypotheses")) {
    kind = "half-graph";
    const HalfGraphCert g = io::read_half_graph(text, c.domain_size());
    check = verify_half_graph(c, g);
    extra["size"] = g.points.size();
  } else {
    throw ParseError("unrecognized certificate (expected a tree, half-graph or shattered set)", 1, "");
  }
  io::Json res{{"kind", kind}, {"valid", check.valid}};
  for (auto& [k, v] : extra.items()) res[k] = v;
  if (!check.valid) {
    res["reason"] = check.reason;
    err << "certificate rejected: " << check.reason << "\n";
  }
  out << res.dump() << "\n";
  return check.valid ? kOk : kVerificationFailed;
}

inline int cmd_soa(const Options& o, std::ostream& out) {
  const ConceptClass c = load_class(o.class_spec);
  const LabeledSequence s = io::read_sequence(io::read_file(o.seq_path), c.domain_size());
  auto engine = LdimEngine::make(c);
  Soa learner(engine, o.learner == "soa-eager" ? Soa::Mode::kEager : Soa::Mode::kLazy);
  const OnlineResult r = run_online(learner, c, s);
  if (o.format == "csv") {
    out << "step,point,label,predicted,mistake,mind_change\n";
    for (const auto& t : r.trace) {
      out << t.step << ',' << t.point << ',' << t.label << ',' << t.predicted << ',' << t.mistake << ','
          << t.mind_change << "\n";
    }
  } else {
    out << io::trace_lines(r.trace);
  }
  io::Json summary{{"mistakes", r.mistakes},
                   {"mind_changes", learner.mind_changes()},
                   {"ldim", engine->ldim()},
                   {"realizable", r.realizable}};
  if (r.learner_rejected_at) summary["rejected_at"] = *r.learner_rejected_at;
  if (o.format != "csv") out << io::Json{{"summary", summary}}.dump() << "\n";
  return kOk;
}

inline int cmd_pec_sim(const Options& o, std::ostream& out) {
  const ConceptClass c = load_class(o.class_spec);
  const FiniteDistribution d = distribution_for(o, c);
  auto engine = LdimEngine::make(c);
  const LearnerFactory factory = learner_by_name(o.learner, c, engine, o.hypothesis);
  if (o.trace) {
    auto learner = factory(o.seed);
    const PecTrace t = simulate_pec(*learner, d, c, o.horizon, o.seed, true);
    out << "step,hypothesis_id,loss,mind_change\n";
    for (const auto& s : t.steps) out << s.step << ',' << s.hypothesis_id << ',' << fmt(s.loss) << ',' << s.mind_change << "\n";
    return kOk;
  }
  const auto trials = run_pec_trials(factory, d, c, o.horizon, o.trials, o.seed);
  if (o.format == "csv") {
    out << "trial,mind_changes,first_zero_loss_step,terminal_loss\n";
    for (const auto& t : trials) {
      out << t.trial << ',' << t.mind_changes << ',';
      if (t.first_zero_loss_step) out << *t.first_zero_loss_step;
      out << ',' << fmt(t.terminal_loss) << "\n";
    }
    return kOk;
  }
  std::size_t within = 0, zero = 0, max_changes = 0;
  const int d_ldim = engine->ldim();
  for (const auto& t : trials) {
    within += static_cast<int>(t.mind_changes) <= d_ldim ? 1 : 0;
    zero += t.terminal_loss == 0.0 ? 1 : 0;
    max_changes = std::max(max_changes, t.mind_changes);
  }
  const double n = static_cast<double>(trials.size());
  out << io::Json{{"learner", o.learner},
                  {"ldim", d_ldim},
                  {"trials", trials.size()},
                  {"horizon", o.horizon},
                  {"max_mind_changes", max_changes},
                  {"fraction_within_ldim", static_cast<double>(within) / n},
                  {"fraction_zero_terminal_loss", static_cast<double>(zero) / n}}
             .dump()
      << "\n";
  return kOk;
}

inline int cmd_pec_adversary(const Options& o, std::ostream& out) {
  const ConceptClass c = load_class(o.class_spec);
  auto engine = LdimEngine::make(c);
  LearnerFactory factory = learner_by_name(o.learner, c, engine, o.hypothesis);
  if (o.wrap) factory = budget_factory(factory, o.budget);
  AdversaryOptions opts;
  opts.repetition_cap = o.cap;
  opts.shallow_tree_is_error = false;
  opts.learner_seed = o.seed;
  const AdversaryVerdict v = force_mind_changes(factory, c, o.budget, opts);
  io::Json seq = io::Json::array();
  for (const auto& z : v.sequence) seq.push_back(io::Json::array({z.point, z.label ? 1 : 0}));
  io::Json res{{"verdict", to_string(v.kind)},
               {"mind_changes", v.mind_changes},
               {"budget", v.budget},
               {"tree_depth", v.tree.depth},
               {"branch", v.branch},
               {"sequence_length", v.sequence.size()},
               {"sequence", seq}};
  if (v.distribution) {
    io::Json atoms = io::Json::array();
    for (const auto& a : v.distribution->atoms()) atoms.push_back(io::Json::array({a.point, a.label ? 1 : 0, a.weight}));
    res["distribution"] = io::Json{{"atoms", atoms}};
    res["frozen_loss"] = loss(v.transcript.back().hypothesis, *v.distribution);
  }
  out << res.dump() << "\n";
  return kOk;
}

inline ExpertCover cover_for(const Options& o, const ConceptClass& c) {
  const std::size_t n = single_n(o, 0);
  if (o.n.empty() && o.cover_path.empty()) throw InvalidArgument("pass --n");
  ExpertCover cover = build_cover(c, n, std::numeric_limits<std::uint64_t>::max());
  if (!o.cover_path.empty()) {
    const std::string text = io::read_file(o.cover_path);
    const io::Json j = io::detail::parse_text(text);
    const io::Json& subsets = io::detail::field(j, "subsets");
    cover.n = io::detail::index_of(io::detail::field(j, "n"), "n", io::detail::locate(text, "n"));
    cover.subsets.clear();
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      std::vector<std::size_t> s;
      const std::size_t line = io::detail::locate(text, "subsets", i);
      if (!subsets[i].is_array()) throw ParseError("subset must be an array", line, "subsets[" + std::to_string(i) + "]");
      for (const auto& v : subsets[i]) s.push_back(io::detail::index_of(v, "subsets[" + std::to_string(i) + "]", line));
      cover.subsets.push_back(std::move(s));
    }
  }
  return cover;
}

inline int cmd_cover_build(const Options& o, std::ostream& out) {
  const ConceptClass c = load_class(o.class_spec);
  if (o.n.empty()) throw InvalidArgument("pass --n");
  const ExpertCover cover = build_cover(c, single_n(o, 0));
  out << io::cover_json(cover).dump() << "\n";
  return kOk;
}

inline int cmd_cover_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const ConceptClass c = load_class(o.class_spec);
  const ExpertCover cover = cover_for(o, c);
  CoverVerifyOptions vo;
  vo.seed = o.seed;
  vo.sampled_trials = o.trials;
  const CoverVerification v = verify_cover(cover, vo);
  io::Json res{{"covered", v.covered},
               {"exhaustive", v.exhaustive},
               {"sequences_checked", v.sequences_checked},
               {"experts", cover.subsets.size()}};
  if (v.counterexample) {
    io::Json seq = io::Json::array();
    for (const auto& z : *v.counterexample) seq.push_back(io::Json::array({z.point, z.label ? 1 : 0}));
    res["counterexample"] = seq;
    err << "cover misses a realizable sequence\n";
  }
  out << res.dump() << "\n";
  return v.covered ? kOk : kVerificationFailed;
}

inline int cmd_alln(const Options& o, std::ostream& out) {
  const ConceptClass c = load_class(o.class_spec);
  const AdversaryFactory adversaries = make_adversary_factory(o.adversary, c.domain_size());
  const std::vector<std::size_t> ns = o.n.empty() ? std::vector<std::size_t>{100} : o.n;
  std::vector<QuantileReport> reports;
  for (std::size_t n : ns) reports.push_back(quantile_discrepancy(c, adversaries, o.big_n, n, o.trials, o.delta, o.seed));
  if (o.format == "csv") {
    out << "trial,n,discrepancy\n";
    for (std::size_t k = 0; k < ns.size(); ++k) {
      for (std::size_t t = 0; t < reports[k].discrepancies.size(); ++t) {
        out << t << ',' << ns[k] << ',' << fmt(reports[k].discrepancies[t]) << "\n";
      }
    }
    return kOk;
  }
  io::Json rows = io::Json::array();
  for (std::size_t k = 0; k < ns.size(); ++k) {
    rows.push_back({{"n", ns[k]},
                    {"quantile", reports[k].quantile},
                    {"median", median(reports[k].discrepancies)},
                    {"reference", reports[k].reference},
                    {"ratio", reports[k].ratio}});
  }
  io::Json res{{"adversary", o.adversary}, {"N", o.big_n}, {"delta", o.delta}, {"trials", o.trials},
               {"ldim", reports.front().ldim}, {"rows", rows}};
  if (ns.size() >= 2) {
    const double a = median(reports.front().discrepancies);
    const double b = median(reports.back().discrepancies);
    res["median_ratio_first_last"] = b > 0.0 ? a / b : 0.0;
  }
  out << res.dump() << "\n";
  return kOk;
}

inline int cmd_stability_info(const Options& o, std::ostream& out) {
  const ConceptClass c = load_class(o.class_spec);
  const FiniteDistribution d = distribution_for(o, c);
  auto engine = LdimEngine::make(c);
  const std::size_t n = single_n(o, 2);
  PosteriorFn posterior = o.learner == "gibbs"
                              ? gibbs_posterior(engine)
                              : deterministic_posterior(learner_by_name(o.learner, c, engine, o.hypothesis), o.seed);
  const InfoUnit unit = o.bits ? InfoUnit::kBits : InfoUnit::kNats;
  const InformationResult r = learner_mutual_information(posterior, c, d, n, unit);
  const double gap = pac_bayes_gap(r.joint, r.joint.mean_posterior(), unit);
  out << io::Json{{"learner", o.learner},
                  {"n", n},
                  {"samples", r.joint.rows().size()},
                  {"outcomes", r.joint.outcomes().size()},
                  {"unit", o.bits ? "bits" : "nats"},
                  {"mutual_information", r.mutual_information},
                  {"pac_bayes_gap_mean_prior", gap},
                  {"identity_gap", std::abs(r.mutual_information - gap)}}
             .dump()
      << "\n";
  return kOk;
}

inline int cmd_goodsets(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.graph_path.empty()) {
    const Graph g = io::read_graph(io::read_file(o.graph_path));
    const auto good = all_good_sets(g, o.eps);
    io::Json res{{"eps", o.eps}, {"vertices", g.size()}, {"good_sets", good.size()}};
    if (!o.b_set.empty()) {
      const std::vector<std::size_t> b = parse_points(o.b_set, g.size());
      const ExcellentCheck e = epsilon_excellent_check(b, g, o.eps, good);
      res["excellent"] = e.excellent;
      if (e.failing_set) {
        res["witness"] = good[*e.failing_set];
        res["exceptions"] = e.exceptions;
      }
      out << res.dump() << "\n";
      if (!e.excellent) err << "B is not eps-excellent\n";
      return e.excellent ? kOk : kVerificationFailed;
    }
    out << res.dump() << "\n";
    return kOk;
  }
  const ConceptClass c = load_class(o.class_spec);
  const std::vector<std::size_t> y = parse_points(o.points, c.domain_size());
  const GoodCheck check = epsilon_good_check(y, c, o.eps);
  const GoodSubsetResult best = largest_good_subset(y, c, o.eps);
  io::Json res{{"eps", o.eps}, {"good", check.good}};
  if (check.violating) res["violating"] = io::bits_json(*check.violating);
  res["largest_good_subset"] = best.subset;
  res["size"] = best.subset.size();
  res["exact"] = best.exact;
  if (best.exponent) res["exponent"] = *best.exponent;
  out << res.dump() << "\n";
  return kOk;
}

inline int cmd_generate(const Options& o, std::ostream& out) {
  out << io::write_class(load_class(o.class_spec));
  return kOk;
}

}  // namespace detail

// Entry point shared by the executable and the tests. `args` excludes argv[0].
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite concept class laboratory", "littlestone"};
  app.require_subcommand(1);
  Options o;

  auto add_class = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--class", o.class_spec, "class file or generator:params");
    if (required) opt->required();
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "seed");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* dims = app.add_subcommand("dims", "VC, Littlestone and threshold dimensions");
  add_class(dims);
  add_common(dims);
  dims->add_option("--emit-tree", o.emit_tree, "write the mistake tree certificate");
  dims->add_option("--emit-half-graph", o.emit_half_graph, "write the half-graph certificate");
  dims->add_option("--emit-shattered", o.emit_shattered, "write the shattered set certificate");

  auto* certify = app.add_subcommand("certify", "check a certificate against a class");
  certify->alias("verify");
  add_class(certify);
  certify->add_option("--cert", o.cert_path, "certificate file")->required();

  auto* soa = app.add_subcommand("soa", "run the SOA on a sequence file");
  add_class(soa);
  add_common(soa);
  soa->add_option("--sequence", o.seq_path, "sequence file")->required();
  soa->add_option("--learner", o.learner, "soa or soa-eager")->check(CLI::IsMember({"soa", "soa-eager"}));

  auto* pec = app.add_subcommand("pec", "PEC simulation and the mind-change adversary");
  pec->require_subcommand(1);
  auto* pec_sim = pec->add_subcommand("sim", "Monte Carlo PEC trials");
  add_class(pec_sim);
  add_common(pec_sim);
  pec_sim->add_option("--dist", o.dist_path, "distribution file");
  pec_sim->add_option("--target", o.target, "use the uniform distribution on the graph of this hypothesis");
  pec_sim->add_option("--learner", o.learner, "soa, soa-eager, first-consistent, gibbs, constant");
  pec_sim->add_option("--hypothesis", o.hypothesis, "index for the constant learner");
  pec_sim->add_option("--trials", o.trials);
  pec_sim->add_option("--horizon", o.horizon);
  pec_sim->add_flag("--trace", o.trace, "per-step CSV of a single run");
  auto* pec_adv = pec->add_subcommand("adversary", "force mind changes on a learner");
  add_class(pec_adv);
  add_common(pec_adv);
  pec_adv->add_option("--learner", o.learner, "soa, soa-eager, first-consistent, gibbs, constant");
  pec_adv->add_option("--hypothesis", o.hypothesis, "index for the constant learner");
  pec_adv->add_option("--budget", o.budget, "mind-change budget")->required();
  pec_adv->add_flag("--wrap", o.wrap, "wrap the learner so it freezes after --budget mind changes");
  pec_adv->add_option("--cap", o.cap, "repetition cap per level");

  auto* cover = app.add_subcommand("cover", "online SSP expert covers");
  cover->require_subcommand(1);
  auto* cover_build = cover->add_subcommand("build", "build the cover for length n");
  add_class(cover_build);
  cover_build->add_option("--n", o.n, "sequence length");
  auto* cover_verify = cover->add_subcommand("verify", "check that a cover predicts every realizable sequence");
  add_class(cover_verify);
  add_common(cover_verify);
  cover_verify->add_option("--n", o.n, "sequence length");
  cover_verify->add_option("--cover", o.cover_path, "cover file (default: build one)");
  cover_verify->add_option("--trials", o.trials, "sampled sequences when enumeration is too large");

  auto* alln = app.add_subcommand("alln", "adversarial sampling");
  alln->require_subcommand(1);
  auto* alln_sim = alln->add_subcommand("sim", "discrepancy of the uniform subsequence sampler");
  add_class(alln_sim);
  add_common(alln_sim);
  alln_sim->add_option("--N", o.big_n, "stream length");
  alln_sim->add_option("--n", o.n, "sample size (repeatable)");
  alln_sim->add_option("--trials", o.trials);
  alln_sim->add_option("--delta", o.delta);
  alln_sim->add_option("--adversary", o.adversary, "iid, round-robin or chaser");

  auto add_goodsets = [&](CLI::App* sub) {
    add_class(sub, false);
    add_common(sub);
    sub->add_option("--eps", o.eps);
    sub->add_option("--points", o.points, "comma-separated points or 'all'");
    sub->add_option("--graph", o.graph_path, "adjacency-matrix graph file");
    sub->add_option("--B", o.b_set, "vertex set to test for eps-excellence");
  };
  auto* stability = app.add_subcommand("stability", "stability measures");
  stability->require_subcommand(1);
  auto* info = stability->add_subcommand("info", "exact mutual information of a learner");
  add_class(info);
  add_common(info);
  info->add_option("--dist", o.dist_path, "distribution file");
  info->add_option("--target", o.target, "use the uniform distribution on the graph of this hypothesis");
  info->add_option("--learner", o.learner, "soa, first-consistent, gibbs, constant");
  info->add_option("--hypothesis", o.hypothesis, "index for the constant learner");
  info->add_option("--n", o.n, "sample size");
  info->add_flag("--bits", o.bits, "report bits instead of nats");
  auto* stab_good = stability->add_subcommand("goodsets", "eps-good and eps-excellent sets");
  add_goodsets(stab_good);
  auto* goodsets = app.add_subcommand("goodsets", "eps-good and eps-excellent sets");
  add_goodsets(goodsets);

  auto* generate = app.add_subcommand("generate", "write a generated class as a class file");
  add_class(generate);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*dims) return detail::cmd_dims(o, out);
    if (*certify) return detail::cmd_certify(o, out, err);
    if (*soa) return detail::cmd_soa(o, out);
    if (*pec_sim) return detail::cmd_pec_sim(o, out);
    if (*pec_adv) return detail::cmd_pec_adversary(o, out);
    if (*cover_build) return detail::cmd_cover_build(o, out);
    if (*cover_verify) return detail::cmd_cover_verify(o, out, err);
    if (*alln_sim) return detail::cmd_alln(o, out);
    if (*info) return detail::cmd_stability_info(o, out);
    if (*stab_good || *goodsets) {
      if (o.graph_path.empty() && o.class_spec.empty()) throw InvalidArgument("pass --class or --graph");
      return detail::cmd_goodsets(o, out, err);
    }
    if (*generate) return detail::cmd_generate(o, out);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << "no subcommand\n";
  return kUsage;
}

}  // namespace littlestone::cli
