#pragma once

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptvertex/boxoracle.hpp"
#include "ptvertex/dt.hpp"
#include "ptvertex/localization.hpp"
#include "ptvertex/parallel.hpp"
#include "ptvertex/strings.hpp"
#include "ptvertex/toric.hpp"

namespace ptvertex {

namespace detail_cli {

inline std::string coeff_str(long c) { return std::to_string(c); }
inline std::string coeff_str(const Rat& c) { return c.get_str(); }
inline std::string coeff_str(const FracS& c) { return ratio_str(c); }

template <class C>
nlohmann::json terms_json(const QLaurentSeries<C>& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (auto& [k, c] : s.coeffs())
    terms.push_back({{"qPower", k}, {"coefficient", coeff_str(c)}});
  return terms;
}

/// The same series written in powers of -q (coefficients flipped at odd
/// powers), for direct comparison with box-counting tables.
inline nlohmann::json minus_q_json(const QLaurentSeries<long>& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (auto& [k, c] : s.coeffs()) {
    long sign = (k % 2 + 2) % 2 == 0 ? 1 : -1;
    terms.push_back({{"qPower", k}, {"coefficient", coeff_str(sign * c)}});
  }
  return terms;
}

inline void emit(const nlohmann::json& j, const std::string& format,
                 std::ostream& out) {
  if (format == "csv") {
    if (j.contains("terms")) {
      out << "qPower,coefficient\n";
      for (auto& t : j.at("terms"))
        out << t.at("qPower").get<int>() << ","
            << t.at("coefficient").get<std::string>() << "\n";
    } else if (j.contains("match")) {
      out << "match," << (j.at("match").get<bool>() ? "true" : "false")
          << "\n";
    } else {
      out << j.dump() << "\n";
    }
    return;
  }
  out << j.dump(2) << "\n";
}

inline std::array<Rat, 3> parse_eval(const std::string& text) {
  std::array<Rat, 3> pt;
  std::stringstream ss(text);
  std::string tok;
  int i = 0;
  while (std::getline(ss, tok, ',')) {
    if (i >= 3) throw std::invalid_argument("--eval needs three values");
    pt[i++] = parse_rat(tok);
  }
  if (i != 3) throw std::invalid_argument("--eval needs three values");
  return pt;
}

inline std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> v;
  if (text.empty()) return v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(std::stoi(tok));
  return v;
}

inline std::map<int, int> parse_beta(const std::string& text) {
  std::map<int, int> degrees;
  if (text.empty()) return degrees;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--beta entries look like class=degree");
    degrees[std::stoi(tok.substr(0, eq))] = std::stoi(tok.substr(eq + 1));
  }
  return degrees;
}

inline nlohmann::json component_json(const ComponentRecord& rec) {
  nlohmann::json boxes = nlohmann::json::array();
  std::map<Weight, int> pcOf;
  std::map<Weight, bool> restrictedOf;
  for (auto& pc : rec.pathComponents)
    for (auto& w : pc.members) {
      pcOf[w] = pc.id;
      restrictedOf[w] = pc.restricted;
    }
  for (auto& [w, t] : rec.config.boxes) {
    nlohmann::json b{{"w", {w[0], w[1], w[2]}}, {"kind", box_tag_name(t)}};
    if (t == BoxTag::IIILine) {
      b["pcid"] = pcOf.at(w);
      b["restricted"] = restrictedOf.at(w);
    }
    boxes.push_back(b);
  }
  return {{"boxes", boxes},
          {"length", rec.length},
          {"dim", rec.dimension},
          {"euler", rec.eulerChar}};
}

}  // namespace detail_cli

inline int cli_run(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  using nlohmann::json;
  CLI::App app{"Exact stable-pairs vertex calculator for toric geometries"};
  app.require_subcommand(1);

  std::string legsText = "-;-;-", mode = "symbolic", evalText, tauText;
  std::string graphPath, betaText, format = "json", theory = "pt";
  int order = 0;
  bool cyFlag = false, assume = false;
  int threads = 0;
  long seed = 0;

  auto addCommon = [&](CLI::App* c) {
    c->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    c->add_flag("--assume-conjectures", assume);
    c->add_option("--threads", threads);
    c->add_option("--seed", seed);
  };
  auto addLegs = [&](CLI::App* c) { c->add_option("--legs", legsText); };
  auto addOrder = [&](CLI::App* c) { c->add_option("--order", order); };
  auto addMode = [&](CLI::App* c) {
    c->add_option("--mode", mode)
        ->check(CLI::IsMember({"symbolic", "numeric"}));
    c->add_option("--eval", evalText);
  };

  CLI::App* enumCmd = app.add_subcommand("enumerate");
  addLegs(enumCmd), addOrder(enumCmd), addCommon(enumCmd);

  CLI::App* vertexCmd = app.add_subcommand("vertex");
  vertexCmd->require_subcommand(1);
  CLI::App* vCy = vertexCmd->add_subcommand("cy");
  CLI::App* vEq = vertexCmd->add_subcommand("equivariant");
  CLI::App* vDesc = vertexCmd->add_subcommand("descendent");
  CLI::App* vDt = vertexCmd->add_subcommand("dt");
  for (auto* c : {vCy, vEq, vDesc, vDt})
    addLegs(c), addOrder(c), addCommon(c);
  for (auto* c : {vEq, vDesc, vDt}) addMode(c);
  vDesc->add_option("--tau", tauText);
  vDt->add_flag("--cy", cyFlag);

  CLI::App* checkCmd = app.add_subcommand("check");
  checkCmd->require_subcommand(1);
  CLI::App* cCon = checkCmd->add_subcommand("con-parity");
  CLI::App* cCor = checkCmd->add_subcommand("correspondence");
  CLI::App* cSpec = checkCmd->add_subcommand("cy-specialization");
  for (auto* c : {cCon, cCor, cSpec}) addLegs(c), addOrder(c), addCommon(c);
  addMode(cCor);
  cCor->add_flag("--cy", cyFlag);

  CLI::App* toricCmd = app.add_subcommand("toric");
  toricCmd->require_subcommand(1);
  CLI::App* tAsm = toricCmd->add_subcommand("assemble");
  tAsm->add_option("--graph", graphPath)->required();
  tAsm->add_option("--beta", betaText);
  tAsm->add_option("--theory", theory)
      ->check(CLI::IsMember({"pt", "dt", "descendent"}));
  tAsm->add_option("--tau", tauText);
  addOrder(tAsm), addMode(tAsm), addCommon(tAsm);

  std::vector<const char*> argv{"ptvertex"};
  for (auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (threads > 0) thread_override() = threads;
    json meta{{"mode", mode},      {"order", order},
              {"seed", seed},      {"format", format},
              {"threads", threads}};
    auto needEval = [&]() {
      if (mode == "numeric" && evalText.empty())
        throw std::invalid_argument("numeric mode needs --eval s1,s2,s3");
    };

    if (enumCmd->parsed()) {
      LegTriple legs = parse_legs(legsText);
      json comps = json::array();
      for (auto& rec : enumerate_components(legs, order))
        comps.push_back(detail_cli::component_json(rec));
      meta["legs"] = legsText;
      detail_cli::emit({{"command", "enumerate"},
                        {"metadata", meta},
                        {"components", comps}},
                       format, out);
      return 0;
    }

    if (vertexCmd->parsed()) {
      LegTriple legs = parse_legs(legsText);
      meta["legs"] = legsText;
      json rep{{"metadata", meta}};
      if (vCy->parsed()) {
        auto s = cy_vertex_series(legs, order);
        rep["command"] = "vertex cy";
        rep["terms"] = detail_cli::terms_json(s);
        rep["minusQForm"] = detail_cli::minus_q_json(s);
        rep["conjectural"] = cy_is_conjectural(legs);
        rep["assumeConjectures"] = assume;
      } else if (vDt->parsed() && cyFlag) {
        auto s = dt_cy_vertex_series(legs, order);
        rep["command"] = "vertex dt";
        rep["terms"] = detail_cli::terms_json(s);
        rep["minusQForm"] = detail_cli::minus_q_json(s);
      } else {
        std::vector<int> taus =
            vDesc->parsed() ? detail_cli::parse_int_list(tauText)
                            : std::vector<int>{};
        rep["command"] = vEq->parsed()      ? "vertex equivariant"
                         : vDesc->parsed()  ? "vertex descendent"
                                            : "vertex dt";
        if (vDesc->parsed()) rep["tau"] = taus;
        if (mode == "numeric") {
          needEval();
          NumericEval ctx{detail_cli::parse_eval(evalText)};
          auto s = vDt->parsed()
                       ? dt_vertex_series(legs, order, ctx).series
                       : descendent_vertex_series(legs, taus, order, ctx)
                             .series;
          rep["terms"] = detail_cli::terms_json(s);
        } else {
          FactoredEval ctx;
          auto s = vDt->parsed()
                       ? dt_vertex_series(legs, order, ctx).series
                       : descendent_vertex_series(legs, taus, order, ctx)
                             .series;
          rep["terms"] = detail_cli::terms_json(s);
        }
      }
      detail_cli::emit(rep, format, out);
      return 0;
    }

    if (checkCmd->parsed()) {
      LegTriple legs = parse_legs(legsText);
      meta["legs"] = legsText;
      json rep{{"metadata", meta}};
      if (cCon->parsed()) {
        bool all = true;
        long checked = 0;
        for (auto& rec : enumerate_components(legs, order)) {
          int N = legs.max_extent() + 2;
          for (int w = N; w <= N + 1; ++w)
            all = all && con_constant(cutoff_character(rec, w)) % 2 == 0;
          ++checked;
        }
        rep["command"] = "check con-parity";
        rep["match"] = all;
        rep["componentsChecked"] = checked;
      } else if (cCor->parsed()) {
        rep["command"] = "check correspondence";
        CorrespondenceReport r;
        if (cyFlag) {
          r = dt_pt_cy_check(legs, order);
        } else if (mode == "numeric") {
          needEval();
          r = dt_pt_equivariant_check(
              legs, order, NumericEval{detail_cli::parse_eval(evalText)});
        } else {
          r = dt_pt_equivariant_check(legs, order, FactoredEval{});
        }
        rep["match"] = r.match;
        if (!r.match) rep["failPower"] = r.failPower;
      } else {
        auto r = cy_specialization_check(legs, order);
        rep["command"] = "check cy-specialization";
        rep["match"] = r.match;
        if (!r.match) rep["failPower"] = r.failPower;
      }
      detail_cli::emit(rep, format, out);
      return 0;
    }

    // toric assemble
    ToricGraph g = load_toric_graph(graphPath);
    auto valid = validate_graph(g);
    if (!valid.valid) {
      json rep{{"command", "toric assemble"}, {"valid", false}};
      rep["violations"] = valid.violations;
      err << rep.dump(2) << "\n";
      return 2;
    }
    auto degrees = detail_cli::parse_beta(betaText);
    bool zeroBeta = true;
    for (auto& [c, d] : degrees) zeroBeta = zeroBeta && d == 0;
    meta["graph"] = graphPath;
    meta["beta"] = betaText;
    meta["theory"] = theory;
    json rep{{"command", "toric assemble"}, {"metadata", meta}};
    if (zeroBeta)
      rep["warning"] =
          "degree zero: empty-curve convention (pairs theory needs a "
          "non-zero class)";
    if (theory == "pt") {
      rep["terms"] = detail_cli::terms_json(assemble_cy_pt(g, degrees, order));
    } else if (theory == "dt") {
      rep["terms"] = detail_cli::terms_json(assemble_cy_dt(g, degrees, order));
    } else {
      auto taus = detail_cli::parse_int_list(tauText);
      rep["tau"] = taus;
      if (mode == "numeric") {
        needEval();
        auto s = assemble_descendents(
            g, degrees, taus, order,
            NumericEval{detail_cli::parse_eval(evalText)});
        rep["terms"] = detail_cli::terms_json(s);
      } else {
        auto s = assemble_descendents(g, degrees, taus, order, FactoredEval{});
        rep["terms"] = detail_cli::terms_json(s);
      }
    }
    detail_cli::emit(rep, format, out);
    return 0;
  } catch (const degenerate_point_error& e) {
    err << "degenerate evaluation point: " << e.what() << "\n";
    return 3;
  } catch (const cancellation_error& e) {
    err << "cancellation failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ptvertex
