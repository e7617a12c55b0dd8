// Command-line surface for the G_s toolkit: subgroup membership, the word
// problem for the doubles, homology of the quotients, separability
// witnesses, and graph export.  Output is JSON (DOT for graph export).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fdl/json_io.hpp"

namespace {

using fdl::Int;
using fdl::json;
using fdl::MultiplyingSequence;
using fdl::Word;

long size_cap() {
  if (const char* env = std::getenv("FDL_SIZE_CAP")) return std::strtol(env, nullptr, 10);
  return fdl::kDefaultVertexCap;
}

// Accepts inline JSON or @path-to-file.
json load_json_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream f(arg.substr(1));
    if (!f) fdl::fail(fdl::ErrorKind::BadInput, "cannot open file " + arg.substr(1));
    return json::parse(f);
  }
  return json::parse(arg);
}

MultiplyingSequence load_seq(const std::string& arg) {
  return fdl::seq_from_json(load_json_arg(arg));
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int exit_code_for(fdl::ErrorKind k) {
  switch (k) {
    case fdl::ErrorKind::SizeCap:
    case fdl::ErrorKind::FactorizationLimit:
    case fdl::ErrorKind::NotFoundWithinBound:
      return 3;
    default:
      return 2;
  }
}

json membership_certificate(const MultiplyingSequence& seq, const Word& w) {
  fdl::HsMembership m = fdl::hs_member(seq, w);
  return {{"type", "membership"},
          {"seq", fdl::seq_to_json(seq)},
          {"word", fdl::format_word(w)},
          {"member", m.member},
          {"witness", fdl::witness_to_json(m.witness)}};
}

json separation_certificate(const MultiplyingSequence* seq, const std::vector<Word>& gens,
                            const Word& avoid) {
  fdl::LabeledGraph g = fdl::LabeledGraph::from_generators(gens, size_cap()).core();
  fdl::PermRep rep = g.hall_complete(avoid, size_cap());
  json jg = json::array();
  for (const Word& w : gens) jg.push_back(fdl::format_word(w));
  json out = fdl::perm_rep_to_json(rep);
  out["type"] = "separation";
  out["gens"] = jg;
  out["avoid"] = fdl::format_word(avoid);
  if (seq) out["seq"] = fdl::seq_to_json(*seq);
  return out;
}

json distinguish_certificate(const MultiplyingSequence& s, const MultiplyingSequence& t) {
  json out = fdl::distinguish_to_json(fdl::distinguish(s, t));
  out["type"] = "distinguish";
  out["seq1"] = fdl::seq_to_json(s);
  out["seq2"] = fdl::seq_to_json(t);
  return out;
}

bool verify_certificate(const json& cert) {
  std::string type = cert.at("type").get<std::string>();
  if (type == "membership") {
    MultiplyingSequence seq = fdl::seq_from_json(cert.at("seq"));
    Word w = fdl::parse_word(cert.at("word").get<std::string>());
    fdl::HsMembership m = fdl::hs_member(seq, w);
    if (m.member != cert.at("member").get<bool>()) return false;
    if (!m.member) return true;
    // Replaying the recorded witness must reconstruct the word.
    auto wit = fdl::witness_from_json(cert.at("witness"));
    return fdl::witness_to_word(seq, wit) == w;
  }
  if (type == "separation") {
    fdl::PermRep rep;
    rep.degree = cert.at("degree").get<int>();
    rep.perm_a = cert.at("perm_a").get<std::vector<int>>();
    rep.perm_b = cert.at("perm_b").get<std::vector<int>>();
    if (!rep.valid()) return false;
    for (const json& g : cert.at("gens"))
      if (rep.act(0, fdl::parse_word(g.get<std::string>())) != 0) return false;
    return rep.act(0, fdl::parse_word(cert.at("avoid").get<std::string>())) != 0;
  }
  if (type == "distinguish") {
    MultiplyingSequence s = fdl::seq_from_json(cert.at("seq1"));
    MultiplyingSequence t = fdl::seq_from_json(cert.at("seq2"));
    json fresh = fdl::distinguish_to_json(fdl::distinguish(s, t));
    for (const char* key : {"k", "m", "kind", "left", "right", "verdict"})
      if (fresh.at(key) != cert.at(key)) return false;
    return fresh.at("verdict") == "non-isomorphic";
  }
  fdl::fail(fdl::ErrorKind::BadInput, "unknown certificate type " + type);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fdl: subgroup graphs, word problems and homology for the doubles G_s"};
  app.require_subcommand(1);

  std::string seq_arg, seq2_arg, word_arg, gens_arg, avoid_arg, cert_arg, kind_arg = "hs",
                                                                          format_arg = "json";
  long k = 1, m_exp = 1, n = 0, N = 12, depth = 4;
  std::string m_arg = "1", p_arg = "2";

  auto* c_validate = app.add_subcommand("seq-validate", "validate a multiplying sequence");
  c_validate->add_option("--seq", seq_arg, "sequence JSON or @file")->required();

  auto* c_member = app.add_subcommand("member", "H_s membership with witness");
  c_member->add_option("--seq", seq_arg)->required();
  c_member->add_option("--word", word_arg)->required();

  auto* c_sk = app.add_subcommand("sk-member", "S_k membership");
  c_sk->add_option("--seq", seq_arg)->required();
  c_sk->add_option("--k", k)->required();
  c_sk->add_option("--word", word_arg)->required();

  auto* c_rewrite = app.add_subcommand("rewrite", "rewrite b^m a^{s_m} b^{-m} inside S_k");
  c_rewrite->add_option("--seq", seq_arg)->required();
  c_rewrite->add_option("--k", k)->required();
  c_rewrite->add_option("--m", m_exp)->required();

  auto* c_wp = app.add_subcommand("word-problem", "normal form / triviality in G_s");
  c_wp->add_option("--seq", seq_arg)->required();
  c_wp->add_option("--word", word_arg)->required();

  auto* c_h1 = app.add_subcommand("homology-h1", "H_1 of G_s/<<a^m, abar^m>>");
  c_h1->add_option("--seq", seq_arg)->required();
  c_h1->add_option("--m", m_arg)->required();

  auto* c_h2 = app.add_subcommand("homology-h2", "H_2 of G_s/<<a^m, abar^m>>");
  c_h2->add_option("--seq", seq_arg)->required();
  c_h2->add_option("--m", m_arg)->required();

  auto* c_oracle = app.add_subcommand("homology-oracle", "truncated presentation/Mayer-Vietoris oracle");
  c_oracle->add_option("--seq", seq_arg)->required();
  c_oracle->add_option("--m", m_arg)->required();
  c_oracle->add_option("--N", N, "truncation depth");

  auto* c_dist = app.add_subcommand("distinguish", "certify G_s and G_t non-isomorphic");
  c_dist->add_option("--seq1", seq_arg)->required();
  c_dist->add_option("--seq2", seq2_arg)->required();

  auto* c_sep = app.add_subcommand("separate", "finite cover separating a word from a subgroup");
  c_sep->add_option("--gens", gens_arg, "comma-separated generator words")->required();
  c_sep->add_option("--avoid", avoid_arg)->required();

  auto* c_graph = app.add_subcommand("graph-export", "materialize an implicit core");
  c_graph->add_option("--seq", seq_arg)->required();
  c_graph->add_option("--kind", kind_arg, "hs or sk");
  c_graph->add_option("--k", k);
  c_graph->add_option("--depth", depth, "H_s truncation depth");
  c_graph->add_option("--format", format_arg, "json or dot");

  auto* c_recover = app.add_subcommand("recover", "recover s_n from the membership oracle");
  c_recover->add_option("--seq", seq_arg)->required();
  c_recover->add_option("--n", n)->required();

  auto* c_resp = app.add_subcommand("residually-p", "is G_s residually a finite p-group");
  c_resp->add_option("--seq", seq_arg)->required();
  c_resp->add_option("--p", p_arg)->required();

  auto* c_verify = app.add_subcommand("verify", "replay a certificate");
  c_verify->add_option("--cert", cert_arg, "certificate JSON or @file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  }

  try {
    if (c_validate->parsed()) {
      MultiplyingSequence s = load_seq(seq_arg);
      emit({{"valid", true}, {"seq", fdl::seq_to_json(s)}});
    } else if (c_member->parsed()) {
      emit(membership_certificate(load_seq(seq_arg), fdl::parse_word(word_arg)));
    } else if (c_sk->parsed()) {
      bool member = fdl::sk_member(load_seq(seq_arg), k, fdl::parse_word(word_arg));
      emit({{"member", member}, {"k", k}, {"word", word_arg}});
    } else if (c_rewrite->parsed()) {
      auto [t, w] = fdl::sk_rewrite(load_seq(seq_arg), k, m_exp);
      emit({{"q", fdl::int_to_json(t.q)},
            {"r", fdl::int_to_json(t.r)},
            {"f", fdl::int_to_json(t.f)},
            {"word", fdl::format_word(w)}});
    } else if (c_wp->parsed()) {
      MultiplyingSequence s = load_seq(seq_arg);
      emit(fdl::normal_form_to_json(fdl::pinch_reduce(s, fdl::parse_word(word_arg))));
    } else if (c_h1->parsed()) {
      emit(fdl::fin_abelian_to_json(fdl::h1_quotient({load_seq(seq_arg), Int(m_arg)})));
    } else if (c_h2->parsed()) {
      emit(fdl::cyclic_sum_to_json(fdl::h2_quotient({load_seq(seq_arg), Int(m_arg)})));
    } else if (c_oracle->parsed()) {
      fdl::QuotientSpec q{load_seq(seq_arg), Int(m_arg)};
      emit({{"h1", fdl::fin_abelian_to_json(fdl::h1_oracle(q, N))},
            {"h2", fdl::fin_abelian_to_json(fdl::h2_oracle(q, N))},
            {"N", N}});
    } else if (c_dist->parsed()) {
      emit(distinguish_certificate(load_seq(seq_arg), load_seq(seq2_arg)));
    } else if (c_sep->parsed()) {
      std::vector<Word> gens;
      std::stringstream ss(gens_arg);
      for (std::string tok; std::getline(ss, tok, ',');)
        if (!tok.empty()) gens.push_back(fdl::parse_word(tok));
      emit(separation_certificate(nullptr, gens, fdl::parse_word(avoid_arg)));
    } else if (c_graph->parsed()) {
      MultiplyingSequence s = load_seq(seq_arg);
      fdl::ImplicitCore core = kind_arg == "sk" ? fdl::ImplicitCore::sk(s, k)
                                                : fdl::ImplicitCore::hs(s);
      fdl::LabeledGraph g = fdl::materialize(core, depth, size_cap());
      if (format_arg == "dot")
        std::cout << g.to_dot();
      else
        emit(fdl::graph_to_json(g));
    } else if (c_recover->parsed()) {
      MultiplyingSequence s = load_seq(seq_arg);
      Int v = fdl::recover_sequence(
          [&](const Word& w) { return fdl::hs_member_bool(s, w); }, n);
      emit({{"n", n}, {"s_n", fdl::int_to_json(v)}});
    } else if (c_resp->parsed()) {
      emit({{"residually_p", fdl::is_residually_p(load_seq(seq_arg), Int(p_arg))},
            {"p", p_arg}});
    } else if (c_verify->parsed()) {
      bool ok = verify_certificate(load_json_arg(cert_arg));
      emit({{"verified", ok}});
      return ok ? 0 : 2;
    }
  } catch (const fdl::Error& e) {
    emit({{"error", fdl::to_string(e.kind())}, {"message", e.what()}});
    return exit_code_for(e.kind());
  } catch (const json::exception& e) {
    emit({{"error", "BadInput"}, {"message", e.what()}});
    return 2;
  }
  return 0;
}
