#include "ssc/cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ssc/combine.hpp"
#include "ssc/document.hpp"
#include "ssc/errors.hpp"
#include "ssc/numeric_oracle.hpp"
#include "ssc/robustness.hpp"
#include "ssc/zero_forcing.hpp"

namespace ssc {

namespace {

using nlohmann::json;

struct Options {
  std::string policy = "lowest-forcer";
  std::string format = "text";
  std::uint64_t seed = kDefaultSeed;
  int trials = 100;
  std::uint64_t budget = kDefaultVerifyBudget;
  std::size_t limit = 100;

  std::string doc_path;
  std::vector<std::string> doc_paths;
  std::string mode;
  bool verify = false;
  std::string sequence;
  std::string inter_path;
  bool ltv = false;
  std::string schedule_path;
  std::string counts;
};

NetworkDocument load_document(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(path + ": " + e.what());
    }
    return document_from_json(j);
  }
  try {
    return parse_document(text);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), e.message() + " in " + path);
  }
}

TieBreakPolicy make_policy(const std::string& spec, const NetworkDocument& doc) {
  if (spec == "lowest-forcer") return TieBreakPolicy::lowest_forcer();
  if (spec == "lowest-forced") return TieBreakPolicy::lowest_forced();
  if (spec.rfind("explicit:", 0) == 0) {
    return TieBreakPolicy::explicit_forces(parse_force_list(read_file(spec.substr(9)), doc));
  }
  throw InputError("unknown policy '" + spec + "'");
}

json names_of(const NetworkDocument& doc, const NodeSet& s) {
  json out = json::array();
  for (Node v : s) out.push_back(doc.name(v));
  return out;
}

json edges_of(const NetworkDocument& doc, const EdgeSet& es) {
  json out = json::array();
  for (const Edge& e : es) out.push_back({doc.name(e.from), doc.name(e.to)});
  return out;
}

std::string edges_text(const NetworkDocument& doc, const EdgeSet& es) {
  std::string out;
  for (const Edge& e : es) out += (out.empty() ? "" : " ") + doc.format_edge(e);
  return out;
}

json chains_json(const NetworkDocument& doc, const TimeFunction& tf) {
  json out = json::array();
  for (const Chain& c : tf.chains().chains()) {
    json chain = json::array();
    for (Node v : c.nodes()) chain.push_back(doc.name(v));
    out.push_back(chain);
  }
  return out;
}

json intervals_json(const NetworkDocument& doc, const TimeFunction& tf) {
  json out = json::object();
  for (const Chain& c : tf.chains().chains()) {
    for (Node v : c.nodes()) out[doc.name(v)] = {tf.time(v), tf.tmax(v)};
  }
  return out;
}

// "v1:[1,1] v6:[2,5] ..." chain by chain.
std::string intervals_text(const NetworkDocument& doc, const TimeFunction& tf) {
  std::string out;
  for (const Chain& c : tf.chains().chains()) {
    for (Node v : c.nodes()) {
      if (!out.empty()) out += ' ';
      out += doc.name(v) + ":[" + std::to_string(tf.time(v)) + "," + std::to_string(tf.tmax(v)) + "]";
    }
  }
  return out;
}

std::string chains_text(const NetworkDocument& doc, const TimeFunction& tf) {
  std::string out;
  for (const Chain& c : tf.chains().chains()) {
    if (!out.empty()) out += ' ';
    out += '[';
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? " " : "") + doc.name(c.nodes()[i]);
    out += ']';
  }
  return out;
}

// The document's own (C,T) if it has one, else one from a forcing schedule.
TimeFunction time_function_for(const NetworkDocument& doc, const TieBreakPolicy& policy) {
  if (auto tf = doc.time_function()) return *tf;
  return TimeFunction::from_record(forcing_schedule(doc.graph(), doc.control_set(), policy));
}

int cmd_check(const Options& o, std::ostream& out) {
  const NetworkDocument doc = load_document(o.doc_path);
  const DiGraph g = doc.graph();
  const ControlSet z = doc.control_set();
  const NodeSet derived = derived_set(g, z.nodes());
  const bool zfs = static_cast<int>(derived.size()) == g.node_count();
  NodeSet white;
  for (Node v = 1; v <= g.node_count(); ++v) {
    if (!derived.contains(v)) white.insert(v);
  }
  std::optional<ForcingRecord> record;
  if (zfs) record = forcing_schedule(g, z, make_policy(o.policy, doc));

  if (o.format == "machine") {
    json j{{"command", "check"}, {"zfs", zfs}, {"derived", names_of(doc, derived)}};
    if (record) {
      const TimeFunction tf = TimeFunction::from_record(*record);
      j["forces"] = json::array();
      for (const Force& f : record->forces) j["forces"].push_back({doc.name(f.forcer), doc.name(f.forced)});
      j["chains"] = chains_json(doc, tf);
      j["intervals"] = intervals_json(doc, tf);
    } else {
      j["stalled_white"] = names_of(doc, white);
    }
    out << j.dump() << '\n';
  } else if (record) {
    const TimeFunction tf = TimeFunction::from_record(*record);
    out << "ZFS: yes\n";
    out << "derived set = " << doc.format_node_set(derived) << '\n';
    out << "forces:";
    for (const Force& f : record->forces) out << ' ' << doc.name(f.forcer) << "->" << doc.name(f.forced);
    out << "\nchains: " << chains_text(doc, tf) << '\n';
    out << "intervals " << intervals_text(doc, tf) << '\n';
  } else {
    out << "ZFS: no\n";
    out << "derived set = " << doc.format_node_set(derived) << '\n';
    out << "stalled white set = " << doc.format_node_set(white) << '\n';
  }
  return zfs ? kExitOk : kExitNegative;
}

json verification_json(const NetworkDocument& doc, const VerificationOutcome& v) {
  json j{{"verdict", to_string(v.verdict)}, {"exhaustive", v.exhaustive}, {"subsets", v.subsets_checked}};
  if (v.counterexample) j["counterexample"] = edges_of(doc, *v.counterexample);
  return j;
}

int cmd_robustness(const Options& o, std::ostream& out) {
  const NetworkDocument doc = load_document(o.doc_path);
  const DiGraph g = doc.graph();
  const ControlSet z = doc.control_set();
  const TieBreakPolicy policy = make_policy(o.policy, doc);
  const EdgeSetReport report =
      o.mode == "sub" ? critical_subtractive_set(g, z, policy) : critical_additive_set(g, z, policy);
  std::optional<VerificationOutcome> verification;
  if (o.verify) verification = verify_edge_set(g, z, report, o.budget, o.seed);

  const bool consistent = report.cardinality == report.bound &&
                          (!verification || verification->verdict != Verdict::Fail);
  if (o.format == "machine") {
    json j{{"command", "robustness"},
           {"kind", to_string(report.kind)},
           {"cardinality", report.cardinality},
           {"bound", report.bound},
           {"edges", edges_of(doc, report.edges)},
           {"witness", {{"chains", chains_json(doc, report.witness)}, {"intervals", intervals_json(doc, report.witness)}}}};
    if (verification) {
      j["seed"] = o.seed;
      j["verification"] = verification_json(doc, *verification);
    }
    out << j.dump() << '\n';
  } else {
    out << "kind: " << to_string(report.kind) << '\n';
    out << "cardinality: " << report.cardinality << '\n';
    out << "bound: " << report.bound << '\n';
    out << "witness intervals " << intervals_text(doc, report.witness) << '\n';
    out << "edges: " << edges_text(doc, report.edges) << '\n';
    if (verification) {
      out << "seed: " << o.seed << '\n';
      out << "verification: " << to_string(verification->verdict) << " ("
          << (verification->exhaustive ? "exhaustive" : "sampled") << ", " << verification->subsets_checked
          << " subsets)\n";
      if (verification->counterexample) {
        out << "counterexample: " << edges_text(doc, *verification->counterexample) << '\n';
      }
    }
  }
  return consistent ? kExitOk : kExitInconsistent;
}

CombineSequence parse_sequence(const std::string& spec) {
  std::vector<int> entries;
  std::string item;
  std::istringstream in(spec);
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (!item.empty() && (item[0] == 'G' || item[0] == 'g')) item.erase(0, 1);
    try {
      std::size_t used = 0;
      entries.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad sequence entry '" + item + "'");
    }
  }
  return CombineSequence(std::move(entries));
}

std::vector<int> parse_counts(const std::string& spec) {
  return parse_sequence(spec).entries();
}

std::vector<std::string> combined_names(const std::vector<NetworkDocument>& docs) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (const auto& v : docs[i].nodes) names.push_back("G" + std::to_string(i + 1) + "." + v);
  }
  return names;
}

std::string sequence_text(const CombineSequence& s) {
  std::string out;
  for (int e : s.entries()) out += (out.empty() ? "G" : " G") + std::to_string(e);
  return out;
}

int cmd_combine(const Options& o, std::ostream& out) {
  std::vector<NetworkDocument> docs;
  for (const auto& p : o.doc_paths) docs.push_back(load_document(p));
  if (docs.empty()) throw InputError("combine needs at least one network document");
  const std::vector<std::string> names = combined_names(docs);

  if (o.mode == "dag") {
    std::vector<DiGraph> dags;
    std::vector<int> sizes;
    for (const auto& d : docs) {
      dags.push_back(d.graph());
      sizes.push_back(static_cast<int>(d.nodes.size()));
    }
    const CombineSequence seq =
        o.sequence.empty() ? enumerate_sequences(sizes, CombineMode::Proc2, 1).front() : parse_sequence(o.sequence);
    const DagCombination combo = combine_dags(dags, seq);
    const NetworkDocument result = make_document(names, combo.graph, ControlSet{combo.control}, combo.tf);
    const bool zfs = is_zfs(combo.graph, ControlSet{combo.control});
    if (o.format == "machine") {
      out << json{{"command", "combine"},
                  {"mode", "dag"},
                  {"sequence", seq.entries()},
                  {"control", result.name(combo.control)},
                  {"zfs", zfs},
                  {"network", to_json(result)}}
                 .dump()
          << '\n';
    } else {
      out << "sequence: " << sequence_text(seq) << '\n';
      out << "control: " << result.name(combo.control) << '\n';
      out << "ZFS: " << (zfs ? "yes" : "no") << '\n';
      out << emit_document(result);
    }
    return zfs ? kExitOk : kExitInconsistent;
  }

  std::vector<Block> blocks;
  std::vector<int> repeats;
  for (const auto& d : docs) {
    TimeFunction tf = time_function_for(d, make_policy(o.policy, d));
    repeats.push_back(tf.node_count() - tf.chain_count());
    blocks.push_back({d.graph(), std::move(tf)});
  }
  const CombineSequence seq =
      o.sequence.empty() ? enumerate_sequences(repeats, CombineMode::Proc1, 1).front() : parse_sequence(o.sequence);

  NetworkDocument scratch;
  scratch.nodes = names;
  EdgeSet inter;
  if (!o.inter_path.empty()) inter = parse_edge_list(read_file(o.inter_path), scratch);

  CombinedNetwork combined;
  try {
    combined = combine_networks(blocks, seq, inter);
  } catch (const RejectedEdge& e) {
    const Edge r = e.edge();
    const std::string msg = "rejected edge " + scratch.format_edge(r) + ": T_max(u)=" + std::to_string(e.tmax_from()) +
                            " < T(v)=" + std::to_string(e.time_to());
    if (o.format == "machine") {
      out << json{{"command", "combine"},
                  {"rejected", {names[r.from - 1], names[r.to - 1]}},
                  {"tmax_from", e.tmax_from()},
                  {"time_to", e.time_to()}}
                 .dump()
          << '\n';
    } else {
      out << msg << '\n';
    }
    return kExitNegative;
  }
  const EdgeSetReport emax = max_inter_edges(blocks, seq);
  const ControlSet sources(combined.tf.chains().sources());
  const NetworkDocument result = make_document(names, combined.graph, sources, combined.tf);
  const bool zfs = is_zfs(combined.graph, sources);
  const bool consistent = zfs && emax.cardinality == emax.bound && is_ct_constructed(combined.graph, combined.tf);

  if (o.format == "machine") {
    out << json{{"command", "combine"},
                {"mode", "general"},
                {"sequence", seq.entries()},
                {"network", to_json(result)},
                {"intervals", intervals_json(result, combined.tf)},
                {"inter_edges", edges_of(result, combined.inter_edges)},
                {"max_inter_edges", edges_of(result, emax.edges)},
                {"max_inter_count", emax.cardinality},
                {"max_inter_bound", emax.bound},
                {"zfs", zfs}}
               .dump()
        << '\n';
  } else {
    out << "sequence: " << sequence_text(seq) << '\n';
    out << "intervals " << intervals_text(result, combined.tf) << '\n';
    out << "inter edges installed: " << combined.inter_edges.size() << '\n';
    out << "E*_max: " << emax.cardinality << " edges (closed form " << emax.bound << ")\n";
    out << "E*_max edges: " << edges_text(result, emax.edges) << '\n';
    out << "sources ZFS: " << (zfs ? "yes" : "no") << '\n';
    out << emit_document(result);
  }
  return consistent ? kExitOk : kExitInconsistent;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const NetworkDocument doc = load_document(o.doc_path);
  const DiGraph g = doc.graph();
  if (o.trials < 1) throw InputError("--trials must be at least 1");

  if (!o.ltv) {
    const ControlSet z = doc.control_set();
    const OracleReport r = verify_ssc_numeric(g, z, o.trials, o.seed);
    if (o.format == "machine") {
      json j{{"command", "oracle"}, {"seed", o.seed},       {"zfs", r.zfs},
             {"trials", r.trials},  {"full_rank", r.full_rank}, {"consistent", r.consistent()}};
      if (!r.zfs) {
        j["stalled_white"] = names_of(doc, r.stalled_white);
        j["witness_rank"] = r.witness_rank;
      }
      out << j.dump() << '\n';
    } else {
      out << "seed: " << o.seed << '\n';
      out << "ZFS: " << (r.zfs ? "yes" : "no") << '\n';
      out << "full Kalman rank: " << r.full_rank << "/" << r.trials << '\n';
      if (!r.zfs) {
        out << "stalled white set = " << doc.format_node_set(r.stalled_white) << '\n';
        out << "witness rank: " << r.witness_rank << " of " << g.node_count() << '\n';
      }
      out << "consistent: " << (r.consistent() ? "yes" : "no") << '\n';
    }
    return r.consistent() ? kExitOk : kExitInconsistent;
  }

  const TimeFunction tf = time_function_for(doc, make_policy(o.policy, doc));
  if (!is_ct_constructed(g, tf)) throw InputError("network is not (C,T)-constructed under its time function");

  if (!o.schedule_path.empty()) {
    const LtvSchedule s = build_schedule(parse_schedule(read_file(o.schedule_path), doc), tf, o.seed);
    const NodeSet sources = tf.chains().sources();
    const ControlSet z = doc.controls.empty() ? ControlSet(sources) : doc.control_set();
    const bool covers = std::includes(z.begin(), z.end(), sources.begin(), sources.end());
    const int n = g.node_count();
    const int rank = ltv_gramian_rank(s, z, 1);
    const int refined = ltv_gramian_rank(s, z, 10);
    const bool consistent = rank == refined && (!covers || rank == n);
    if (o.format == "machine") {
      out << json{{"command", "oracle"}, {"seed", o.seed},      {"ltv", true},          {"controls", names_of(doc, z.nodes())},
                  {"includes_sources", covers}, {"rank", rank}, {"rank_refined", refined}, {"consistent", consistent}}
                 .dump()
          << '\n';
    } else {
      out << "seed: " << o.seed << '\n';
      out << "controls = " << doc.format_node_set(z.nodes()) << (covers ? " (include all sources)" : " (miss a source)")
          << '\n';
      out << "Gramian rank: " << rank << " of " << n << " (10x refinement: " << refined << ")\n";
      out << "consistent: " << (consistent ? "yes" : "no") << '\n';
    }
    return consistent ? kExitOk : kExitInconsistent;
  }

  const LtvFamilyReport r = verify_ltv_family(tf, o.trials, o.seed);
  if (o.format == "machine") {
    out << json{{"command", "oracle"},
                {"seed", o.seed},
                {"ltv", true},
                {"trials", r.trials},
                {"full_rank_with_sources", r.full_rank_with_sources},
                {"necessity_witnessed", r.necessity_witnessed},
                {"consistent", r.consistent()}}
               .dump()
        << '\n';
  } else {
    out << "seed: " << o.seed << '\n';
    out << "full Gramian rank from sources: " << r.full_rank_with_sources << "/" << r.trials << '\n';
    out << "deficient without a source: " << r.necessity_witnessed << "/" << r.trials << '\n';
    out << "consistent: " << (r.consistent() ? "yes" : "no") << '\n';
  }
  return r.consistent() ? kExitOk : kExitInconsistent;
}

int cmd_schedules(const Options& o, std::ostream& out) {
  if (!o.counts.empty()) {
    const std::vector<int> repeats = parse_counts(o.counts);
    const CombineMode mode = o.mode == "proc2" ? CombineMode::Proc2 : CombineMode::Proc1;
    const auto seqs = enumerate_sequences(repeats, mode, o.limit);
    if (o.format == "machine") {
      json list = json::array();
      for (const auto& s : seqs) list.push_back(s.entries());
      json j{{"command", "schedules"}, {"sequences", list}};
      if (mode == CombineMode::Proc1) j["total"] = sequence_count(repeats);
      out << j.dump() << '\n';
    } else {
      if (mode == CombineMode::Proc1) out << "total: " << sequence_count(repeats) << '\n';
      for (const auto& s : seqs) out << sequence_text(s) << '\n';
    }
    return kExitOk;
  }
  if (o.doc_path.empty()) throw InputError("schedules needs a network document or --counts");
  const NetworkDocument doc = load_document(o.doc_path);
  const auto records = enumerate_forcing_schedules(doc.graph(), doc.control_set(), o.limit);
  if (o.format == "machine") {
    json list = json::array();
    for (const auto& r : records) {
      json forces = json::array();
      for (const Force& f : r.forces) forces.push_back({doc.name(f.forcer), doc.name(f.forced)});
      const TimeFunction tf = TimeFunction::from_record(r);
      list.push_back({{"forces", forces}, {"intervals", intervals_json(doc, tf)}});
    }
    out << json{{"command", "schedules"}, {"schedules", list}}.dump() << '\n';
  } else {
    for (const auto& r : records) {
      out << "forces:";
      for (const Force& f : r.forces) out << ' ' << doc.name(f.forcer) << "->" << doc.name(f.forced);
      out << "\n  intervals " << intervals_text(doc, TimeFunction::from_record(r)) << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strong structural controllability toolkit", "ssc_tool"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "machine"}));
  };
  auto add_policy = [&](CLI::App* sub) {
    sub->add_option("--policy", o.policy, "lowest-forcer | lowest-forced | explicit:FILE");
  };

  auto* check = app.add_subcommand("check", "Zero forcing verdict and forcing intervals");
  check->add_option("network", o.doc_path, "Network document")->required();
  add_policy(check);
  add_format(check);

  auto* robust = app.add_subcommand("robustness", "Critical additive or subtractive edge set");
  robust->add_option("network", o.doc_path, "Network document")->required();
  robust->add_option("--mode", o.mode, "add | sub")->check(CLI::IsMember({"add", "sub"}))->default_val("add");
  robust->add_flag("--verify", o.verify, "Check subsets of the reported set");
  robust->add_option("--budget", o.budget, "Exhaustive verification limit on subset count")->capture_default_str();
  robust->add_option("--seed", o.seed, "Seed for sampled verification")->capture_default_str();
  add_policy(robust);
  add_format(robust);

  auto* combine = app.add_subcommand("combine", "Combine networks into a network of networks");
  combine->add_option("networks", o.doc_paths, "Network documents, blocks G1, G2, ...")->required();
  combine->add_option("--mode", o.mode, "general | dag")->check(CLI::IsMember({"general", "dag"}))->default_val("general");
  combine->add_option("--sequence", o.sequence, "Comma-separated block indices, e.g. 2,1,1,2");
  combine->add_option("--inter", o.inter_path, "Inter-network edge list over names G<i>.<node>");
  add_policy(combine);
  add_format(combine);

  auto* oracle = app.add_subcommand("oracle", "Numerical controllability cross-check");
  oracle->add_option("network", o.doc_path, "Network document")->required();
  oracle->add_option("--trials", o.trials, "Number of random samples")->capture_default_str();
  oracle->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  oracle->add_flag("--ltv", o.ltv, "Time-varying check over the (C,T) class");
  oracle->add_option("--schedule", o.schedule_path, "Schedule description (with --ltv)");
  add_policy(oracle);
  add_format(oracle);

  auto* schedules = app.add_subcommand("schedules", "Enumerate forcing schedules or combination sequences");
  schedules->add_option("network", o.doc_path, "Network document");
  schedules->add_option("--counts", o.counts, "Repetition counts per block, e.g. 2,2");
  schedules->add_option("--mode", o.mode, "proc1 | proc2")->check(CLI::IsMember({"proc1", "proc2"}))->default_val("proc1");
  schedules->add_option("--limit", o.limit, "Maximum number listed")->capture_default_str();
  add_format(schedules);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*robust) return cmd_robustness(o, out);
    if (*combine) return cmd_combine(o, out);
    if (*oracle) return cmd_oracle(o, out);
    if (*schedules) return cmd_schedules(o, out);
  } catch (const NotZfsError& e) {
    err << "error: " << e.what() << "; stalled white set has " << e.stalled_white().size() << " nodes\n";
    return kExitNegative;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace ssc
