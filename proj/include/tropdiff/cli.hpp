#pragma once

#include "CLI11.hpp"

#include "tropdiff/json_io.hpp"
#include "tropdiff/tropdiff.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

namespace tropdiff::cli {

/// Exit statuses of the command-line tool.
enum Exit : int { ok = 0, negative = 1, input_error = 2 };

namespace detail {

// Parse errors are reported against the argument that caused them.
struct ArgumentError {
  std::string option;
  std::string text;
  std::string message;
  std::size_t column = 0;
};

template <class F>
auto parse_arg(const std::string& option, const std::string& text, F&& f) -> decltype(f(text)) {
  try {
    return f(text);
  } catch (const parse_error& e) {
    std::string msg = e.what();
    throw ArgumentError{option, text, msg, e.line() == 1 ? e.column() : 0};
  } catch (const error& e) {
    throw ArgumentError{option, text, e.what(), 0};
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError{option, text, e.what(), 0};
  }
}

inline bool looks_like_json(const std::string& s) {
  auto p = s.find_first_not_of(" \t\r\n");
  return p != std::string::npos && s[p] == '{' && s.find('"') != std::string::npos;
}

inline TruncatedSeries series_arg(const std::string& opt, const std::string& text) {
  return parse_arg(opt, text, [](const std::string& s) {
    return looks_like_json(s) ? json::parse(s).get<TruncatedSeries>() : parse_series(s);
  });
}

inline DiffPolynomial diff_poly_arg(const std::string& opt, const std::string& text) {
  return parse_arg(opt, text, [](const std::string& s) {
    return looks_like_json(s) ? json::parse(s).get<DiffPolynomial>() : parse_diff_poly(s);
  });
}

inline TropDiffPolynomial trop_arg(const std::string& opt, const std::string& text) {
  return parse_arg(opt, text, [](const std::string& s) {
    return looks_like_json(s) ? json::parse(s).get<TropDiffPolynomial>() : parse_system_entry(s);
  });
}

inline SupportTuple supports_arg(const std::string& opt, const std::vector<std::string>& texts) {
  SupportTuple out;
  for (const auto& text : texts) {
    auto part = parse_arg(opt, text, [](const std::string& s) {
      if (!looks_like_json(s)) return parse_support_tuple(s);
      auto j = json::parse(s);
      return j.is_array() ? j.get<SupportTuple>() : SupportTuple{j.get<SupportSet>()};
    });
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

inline std::vector<TruncatedSeries> series_tuple_arg(const std::string& opt, const std::vector<std::string>& texts) {
  std::vector<TruncatedSeries> out;
  for (const auto& text : texts) {
    if (looks_like_json(text)) {
      out.push_back(series_arg(opt, text));
      continue;
    }
    // A comma never occurs inside a series, so it separates components.
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == ',') {
        out.push_back(series_arg(opt, text.substr(start, i - start)));
        start = i + 1;
      }
    }
  }
  return out;
}

template <class T>
std::vector<T> widen_all(std::vector<T> items, std::size_t n) {
  for (auto& p : items) p = p.widened(std::max(n, p.n()));
  return items;
}

inline std::string tuple_list(const std::vector<SupportTuple>& tuples) {
  std::string out;
  for (const auto& t : tuples) out += "  " + to_string(t) + "\n";
  return out;
}

}  // namespace detail

/// Runs the tool on `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tropical differential algebra over formal power series", "tropdiff"};
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false;
  std::uint64_t seed = 0;
  std::uint64_t cap = std::uint64_t{1} << 20;
  app.add_flag("--json", as_json, "Emit JSON documents");
  app.add_option("--seed", seed, "Seed for randomized witness search");
  app.add_option("--cap", cap, "Maximal number of support tuples to enumerate");

  int status = Exit::ok;
  std::function<void()> action;

  auto emit = [&](const json& doc, const std::string& text) {
    if (as_json)
      out << doc.dump(2) << "\n";
    else
      out << text;
  };

  // trop-series
  std::vector<std::string> series_texts;
  auto* trop_series = app.add_subcommand("trop-series", "Support (tropicalization) of series");
  trop_series->add_option("series", series_texts, "Series, one per component")->required();
  trop_series->callback([&] {
    action = [&] {
      auto phi = detail::series_tuple_arg("series", series_texts);
      json doc = json::array();
      std::string text;
      for (const auto& s : phi) {
        auto sup = support(s);
        json entry{{"support", sup.set}, {"window", nullptr}};
        if (sup.window) entry["window"] = *sup.window;
        doc.push_back(entry);
        text += to_string(sup.set);
        if (sup.window) text += "  (known below t^" + std::to_string(*sup.window) + ")";
        text += "\n";
      }
      emit(json{{"supports", doc}}, text);
    };
  });

  // tropicalize
  std::string poly_text;
  auto* trop_cmd = app.add_subcommand("tropicalize", "Tropicalize a differential polynomial");
  trop_cmd->add_option("poly", poly_text, "Differential polynomial")->required();
  trop_cmd->callback([&] {
    action = [&] {
      auto tp = tropicalize(detail::diff_poly_arg("poly", poly_text));
      emit(json(tp), to_string(tp) + "\n");
    };
  });

  // eval
  std::string eval_poly_text;
  std::vector<std::string> eval_series;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a differential polynomial at a series tuple");
  eval_cmd->add_option("-p,--poly", eval_poly_text, "Differential polynomial")->required();
  eval_cmd->add_option("-s,--series", eval_series, "Series (repeat or comma-separate for tuples)")->required();
  eval_cmd->callback([&] {
    action = [&] {
      auto phi = detail::series_tuple_arg("-s", eval_series);
      auto p = detail::diff_poly_arg("-p", eval_poly_text);
      if (p.n() < phi.size()) p = p.widened(phi.size());
      auto r = detail::parse_arg("-s", eval_series.front(), [&](const std::string&) { return eval_poly(p, phi); });
      emit(json(r), to_string(r) + "\n");
    };
  });

  // trop-eval and check share their arguments.
  std::string trop_text;
  std::vector<std::string> support_texts;
  auto add_trop_args = [&](CLI::App* cmd) {
    cmd->add_option("-p,--poly", trop_text, "Tropical polynomial or trop(<diff-poly>)")->required();
    cmd->add_option("-S,--support", support_texts, "Support set (repeat for tuples)")->required();
  };
  auto evaluate_trop = [&] {
    auto s = detail::supports_arg("-S", support_texts);
    auto tp = detail::trop_arg("-p", trop_text);
    if (tp.n() < s.size()) tp = tp.widened(s.size());
    return detail::parse_arg("-S", support_texts.front(), [&](const std::string&) { return is_solution(tp, s); });
  };
  auto minimizer_text = [](const TropSolutionCheck& c) {
    std::string m;
    for (const auto& mono : c.minimizers) m += (m.empty() ? "" : ", ") + monomial_string(mono, " (*) ");
    return m.empty() ? std::string("-") : m;
  };

  auto* trop_eval = app.add_subcommand("trop-eval", "Evaluate a tropical polynomial at a support tuple");
  add_trop_args(trop_eval);
  trop_eval->callback([&] {
    action = [&] {
      auto c = evaluate_trop();
      emit(json(c), "value: " + to_string(c.value) + "\nminimized by: " + minimizer_text(c) + "\n");
    };
  });

  auto* check = app.add_subcommand("check", "Decide whether a support tuple solves a tropical polynomial");
  add_trop_args(check);
  check->callback([&] {
    action = [&] {
      auto c = evaluate_trop();
      std::string text = c.is_solution ? "solution" : "not a solution";
      text += " (value " + to_string(c.value) + "; minimized by " + minimizer_text(c) + ")\n";
      emit(json(c), text);
      if (!c.is_solution) status = Exit::negative;
    };
  });

  // enumerate
  std::vector<std::string> system_texts;
  std::uint64_t bound = 0;
  std::size_t arity = 0;
  bool allow_tail = false;
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate tropical solutions of a system over a window");
  enumerate->add_option("-H,--system", system_texts, "Tropical polynomial or trop(<diff-poly>); repeatable")
      ->required();
  enumerate->add_option("-N,--window", bound, "Window bound N: supports inside {0..N}")->required();
  enumerate->add_option("-n,--unknowns", arity, "Number of unknowns (default: largest index used)");
  enumerate->add_flag("--tail", allow_tail, "Also allow a full tail [N+1, inf) on each component");
  enumerate->callback([&] {
    action = [&] {
      std::vector<TropDiffPolynomial> system;
      std::size_t n = std::max<std::size_t>(arity, 1);
      for (const auto& text : system_texts) {
        system.push_back(detail::trop_arg("-H", text));
        n = std::max(n, system.back().n());
      }
      system = detail::widen_all(std::move(system), n);
      WindowSpec w{bound, allow_tail};
      auto sols = enumerate_tropical_solutions(system, n, w, {cap, 0});
      json doc{{"n", n}, {"window", w}, {"count", sols.size()}, {"solutions", sols}};
      emit(doc, std::to_string(sols.size()) + " solution(s) in window {0.." + std::to_string(bound) + "}" +
                    (allow_tail ? " with tails" : "") + ":\n" + detail::tuple_list(sols));
    };
  });

  // jets
  std::vector<std::string> gen_texts;
  std::uint64_t level = 0;
  auto* jets = app.add_subcommand("jets", "Jet polynomials F_lk = (d^k f_l)|_{t=0} for k <= m");
  jets->add_option("-g,--generator", gen_texts, "Differential polynomial; repeatable")->required();
  jets->add_option("-m,--level", level, "Level m")->required();
  jets->callback([&] {
    action = [&] {
      json gens_doc = json::array();
      std::string text;
      std::uint32_t max_order = 0;
      for (std::size_t l = 0; l < gen_texts.size(); ++l) {
        auto f = detail::diff_poly_arg("-g", gen_texts[l]);
        auto jp = detail::parse_arg("-g", gen_texts[l], [&](const std::string&) { return jet_polys(f, level); });
        max_order = std::max(max_order, jp.max_order);
        gens_doc.push_back(json{{"generator", f}, {"polys", jp.polys}, {"max_order", jp.max_order}});
        text += "f" + std::to_string(l + 1) + " = " + to_string(f) + "\n";
        for (std::size_t k = 0; k < jp.polys.size(); ++k)
          text += "  F" + std::to_string(l + 1) + "," + std::to_string(k) + " = " + to_string(jp.polys[k]) + "\n";
      }
      text += "N_" + std::to_string(level) + " = " + std::to_string(max_order) + "\n";
      emit(json{{"level", level}, {"generators", gens_doc}, {"max_order", max_order}}, text);
    };
  });

  // jet-witness
  std::vector<std::string> jw_gens;
  std::vector<std::string> jw_supports;
  std::uint64_t jw_level = 0;
  std::string strategy_name = "auto";
  auto* jet_witness = app.add_subcommand("jet-witness", "Search a jet-level point with prescribed support");
  jet_witness->add_option("-g,--generator", jw_gens, "Differential polynomial; repeatable");
  jet_witness->add_option("-S,--support", jw_supports, "Support set (repeat for tuples)")->required();
  jet_witness->add_option("-m,--level", jw_level, "Level m")->required();
  jet_witness->add_option("--strategy", strategy_name, "auto, linear, grid or random")
      ->check(CLI::IsMember({"auto", "linear", "grid", "random"}));
  jet_witness->callback([&] {
    action = [&] {
      auto s = detail::supports_arg("-S", jw_supports);
      std::vector<DiffPolynomial> gens;
      for (const auto& text : jw_gens) gens.push_back(detail::diff_poly_arg("-g", text));
      JetSearchOptions opts;
      opts.seed = seed;
      opts.strategy = strategy_name == "linear" ? JetStrategy::linear
                      : strategy_name == "grid" ? JetStrategy::grid
                      : strategy_name == "random" ? JetStrategy::random
                                                  : JetStrategy::automatic;
      auto r = jet_witness_search(gens, s, jw_level, opts);
      std::string text = std::string(to_string(r.status)) + " (" + r.method + ", N_m = " +
                         std::to_string(r.max_order) + ")\n";
      if (r.status == JetWitnessStatus::found) {
        for (std::size_t i = 0; i < r.witness.size(); ++i) {
          text += "  x" + std::to_string(i + 1) + ":";
          for (const auto& [j, a] : r.witness[i].entries())
            text += " a" + std::to_string(j) + " = " + a.str();
          text += "  -> " + to_string(psi(r.witness[i])) + "\n";
        }
      } else {
        text += "  " + r.reason + "\n";
      }
      emit(json(r), text);
      if (r.status != JetWitnessStatus::found) status = Exit::negative;
    };
  });

  // verify-ft
  std::vector<std::string> ft_gens;
  std::vector<std::string> ft_family;
  std::uint64_t ft_bound = 0;
  std::uint64_t depth = 0;
  bool ft_tail = false;
  auto* verify = app.add_subcommand("verify-ft", "Compare Sol(trop(G)) with trop(Sol(G)) over a window");
  verify->add_option("-g,--generator", ft_gens, "Differential polynomial; repeatable");
  verify->add_option("-f,--family", ft_family, "Solution family component(s); repeatable")->required();
  verify->add_option("-N,--window", ft_bound, "Window bound N")->required();
  verify->add_option("-K,--depth", depth, "Derivative closure depth K")->required();
  verify->add_flag("--tail", ft_tail, "Also allow a full tail [N+1, inf) on each component");
  verify->callback([&] {
    action = [&] {
      std::string fam_text;
      for (const auto& f : ft_family) fam_text += (fam_text.empty() ? "" : ", ") + f;
      auto fam = detail::parse_arg("-f", fam_text, [](const std::string& s) { return parse_family(s); });
      std::vector<DiffPolynomial> gens;
      for (const auto& text : ft_gens) gens.push_back(detail::diff_poly_arg("-g", text));
      FTOptions opts;
      opts.enumeration.cap = cap;
      auto report = verify_fundamental_theorem(gens, fam, {ft_bound, ft_tail}, depth, opts);
      std::string text = "verdict: " + report.verdict() + "\n";
      text += "witness set (depth " + std::to_string(depth) + "):\n";
      for (const auto& w : report.witnesses)
        text += "  trop(d^" + std::to_string(w.derivative) + " g" + std::to_string(w.generator + 1) +
                ") = " + to_string(w.trop) + "\n";
      text += "trop(Sol(G)) in window: " + std::to_string(report.trop_sol.size()) + "\n" +
              detail::tuple_list(report.trop_sol);
      text += "Sol(trop(W)) in window: " + std::to_string(report.sol_trop.size()) + "\n" +
              detail::tuple_list(report.sol_trop);
      if (!report.discrepancies.empty())
        text += "not realized by the family: " + std::to_string(report.discrepancies.size()) + "\n" +
                detail::tuple_list(report.discrepancies);
      if (!report.family_outside_window.empty())
        text += "family supports beyond the window: " + std::to_string(report.family_outside_window.size()) + "\n";
      for (const auto& c : report.cancellations) text += "warning: samples disagree for " + c + "\n";
      emit(json(report), text);
      if (!report.equal) status = Exit::negative;
    };
  });

  try {
    // CLI11 consumes a reversed argument vector.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Exit::ok : Exit::input_error;
  }

  auto report_error = [&](const std::string& message, const detail::ArgumentError* arg) {
    err << "error: ";
    if (arg) err << "in " << arg->option << " '" << arg->text << "': ";
    err << message << "\n";
    if (arg && arg->column > 0) err << "  " << arg->text << "\n  " << std::string(arg->column - 1, ' ') << "^\n";
    if (as_json) {
      json doc{{"error", message}};
      if (arg) doc["input"] = json{{"option", arg->option}, {"text", arg->text}, {"column", arg->column}};
      out << doc.dump(2) << "\n";
    }
    return Exit::input_error;
  };

  try {
    if (action) action();
  } catch (const detail::ArgumentError& e) {
    return report_error(e.message, &e);
  } catch (const error& e) {
    return report_error(e.what(), nullptr);
  } catch (const std::overflow_error& e) {
    return report_error(e.what(), nullptr);
  }
  return status;
}

}  // namespace tropdiff::cli
