#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "ncad/json_io.hpp"
#include "ncad/testkit.hpp"

namespace {

using ncad::Json;

// Reconstruction formulas echoed with every integration result, so a stored
// output is self-describing: together with the sources and base points it
// determines the antiderivative at every admissible size.
constexpr const char* kRecipeOrder0 =
    "f(X) = kron(I_m, f0) + F(kron(I_m, Y), X) * (X - kron(I_m, Y)), for any square X "
    "whose side is m times the side of Y";
constexpr const char* kRecipeHigher =
    "f(X^0,..,X^k)(Z^1,..,Z^k) = amplify(g)(Z^1,..,Z^k) + sum over j = 0..k of "
    "F_j(kron(I_m_0, Y^0),..,kron(I_m_j, Y^j), X^j,..,X^k)"
    "(Z^1,..,Z^j, X^j - kron(I_m_j, Y^j), Z^{j+1},..,Z^k), where the side of X^j is "
    "m_j times the side of Y^j; amplify(g) cuts each Z^t into an m_{t-1} x m_t grid of "
    "base-sized blocks and sums g over all block index paths between output blocks";

struct Outcome {
  Json doc;
  int code = 0;
};

/// Runs one verb body and emits its single JSON document. Results (including
/// mathematically negative reports) honor --output; error objects always go
/// to standard output, with a one-line diagnostic on standard error.
int run(const std::function<Outcome()>& body, const std::string& output_path) {
  try {
    const Outcome out = body();
    const std::string text = out.doc.dump(2) + "\n";
    if (!output_path.empty()) {
      std::ofstream file(output_path, std::ios::binary);
      if (!file) ncad::fail(ncad::ErrorKind::UsageError, "cannot write file: " + output_path);
      file << text;
      if (!file) ncad::fail(ncad::ErrorKind::UsageError, "write failed: " + output_path);
    } else {
      std::cout << text;
    }
    return out.code;
  } catch (const ncad::NcadError& e) {
    std::cerr << ncad::error_name(e.kind()) << ": " << e.detail() << "\n";
    std::cout << Json{{"error", ncad::error_name(e.kind())}, {"detail", e.detail()}}.dump(2)
              << "\n";
    return ncad::is_math_failure(e.kind()) ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    std::cout << Json{{"error", "InternalError"}, {"detail", e.what()}}.dump(2) << "\n";
    return 2;
  }
}

std::vector<ncad::NcPolynomial> load_polys(const std::vector<std::string>& paths) {
  std::vector<ncad::NcPolynomial> out;
  for (const std::string& path : paths) out.push_back(ncad::poly_from_json(ncad::load_json_file(path)));
  return out;
}

std::vector<ncad::PointMatrix> load_points(const std::vector<std::string>& paths) {
  std::vector<ncad::PointMatrix> out;
  for (const std::string& path : paths) out.push_back(ncad::point_from_json(ncad::load_json_file(path)));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Difference-differential calculus for free noncommutative functions "
               "over exact rationals",
               "ncad"};
  app.require_subcommand(1);

  auto add_output = [](CLI::App* sub, std::string& var) {
    sub->add_option("--output", var,
                    "Write the JSON result to this file instead of standard output");
  };

  // eval
  std::string eval_poly_path, eval_points_path, eval_output;
  CLI::App* cmd_eval = app.add_subcommand("eval", "Evaluate a polynomial at matrix points");
  cmd_eval->add_option("--poly", eval_poly_path, "Polynomial JSON file")->required();
  cmd_eval->add_option("--points", eval_points_path,
                       "Sample JSON file {\"X\": [point,..], \"Z\": [point,..]}")
      ->required();
  add_output(cmd_eval, eval_output);

  // delta
  std::string delta_poly_path, delta_points_path, delta_output;
  std::size_t delta_slot = 0;
  bool delta_numeric = false;
  CLI::App* cmd_delta = app.add_subcommand("delta", "Difference-differential at one slot");
  cmd_delta->add_option("--slot", delta_slot, "Slot index j, 0-based")->required();
  cmd_delta->add_option("--poly", delta_poly_path, "Polynomial JSON file")->required();
  CLI::Option* delta_numeric_flag = cmd_delta->add_flag(
      "--numeric", delta_numeric,
      "Evaluate the split numerically instead of returning the symbolic polynomial");
  CLI::Option* delta_points_opt = cmd_delta->add_option(
      "--points", delta_points_path,
      "Sample for the split: k+2 points, k+1 directions (the inserted one at index j)");
  delta_numeric_flag->needs(delta_points_opt);
  delta_points_opt->needs(delta_numeric_flag);
  add_output(cmd_delta, delta_output);

  // check
  std::vector<std::string> check_sources, check_bases;
  std::uint64_t check_seed = 1;
  std::string check_output;
  CLI::App* cmd_check =
      app.add_subcommand("check", "Compatibility of integration sources F_0..F_k");
  cmd_check->add_option("--F", check_sources, "Source polynomial files, comma separated")
      ->delimiter(',')
      ->required();
  cmd_check->add_option("--base", check_bases,
                        "Base point files (one per slot); adds a sampled numeric check")
      ->delimiter(',');
  cmd_check->add_option("--seed", check_seed, "Seed for the sampled numeric check");
  add_output(cmd_check, check_output);

  // integrate
  std::vector<std::string> int_sources, int_bases;
  std::size_t int_slot_count = 0;
  std::string int_c, int_output;
  CLI::App* cmd_int = app.add_subcommand(
      "integrate", "Reconstruct the antiderivative from sources and base points");
  cmd_int->add_option("--slot-count", int_slot_count,
                      "Number of slots being integrated (= number of sources)")
      ->required();
  cmd_int->add_option("--F", int_sources, "Source polynomial files, comma separated")
      ->delimiter(',')
      ->required();
  cmd_int->add_option("--base", int_bases, "Base point files, one per slot")
      ->delimiter(',')
      ->required();
  cmd_int->add_option("--c", int_c,
                      "Free additive constant (rational), single-slot form only");
  add_output(cmd_int, int_output);

  // integrate-poly
  std::string ip_poly_path, ip_output;
  std::size_t ip_slot = 0;
  CLI::App* cmd_ip =
      app.add_subcommand("integrate-poly", "Symbolic antiderivative at one slot");
  cmd_ip->add_option("--poly", ip_poly_path, "Polynomial JSON file")->required();
  cmd_ip->add_option("--slot", ip_slot, "Slot index j, 0-based")->required();
  add_output(cmd_ip, ip_output);

  // derivation
  std::string der_poly_path, der_base_path, der_c = "0", der_output;
  CLI::App* cmd_der = app.add_subcommand(
      "derivation", "Base derivation table of a first order source and its inner solution");
  cmd_der->add_option("--poly", der_poly_path, "First order source polynomial file")->required();
  cmd_der->add_option("--base", der_base_path, "Square base point file")->required();
  cmd_der->add_option("--c", der_c, "Diagonal normalization added as c * I");
  add_output(cmd_der, der_output);

  // selftest
  std::uint64_t selftest_seed = 1;
  std::string selftest_output;
  CLI::App* cmd_self = app.add_subcommand("selftest", "Run the whole property suite");
  cmd_self->add_option("--seed", selftest_seed, "Seed for all generated data");
  add_output(cmd_self, selftest_output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cout << Json{{"error", "UsageError"}, {"detail", e.what()}}.dump(2) << "\n";
    return 2;
  }

  if (cmd_eval->parsed()) {
    return run(
        [&]() -> Outcome {
          const ncad::NcPolynomial p = ncad::poly_from_json(ncad::load_json_file(eval_poly_path));
          const ncad::EvalSample s = ncad::sample_from_json(ncad::load_json_file(eval_points_path));
          return {ncad::matrix_to_json(ncad::eval_poly(p, s.points, s.dirs)), 0};
        },
        eval_output);
  }

  if (cmd_delta->parsed()) {
    return run(
        [&]() -> Outcome {
          const ncad::NcPolynomial p = ncad::poly_from_json(ncad::load_json_file(delta_poly_path));
          if (!delta_numeric) return {ncad::poly_to_json(ncad::delta_sym(p, delta_slot)), 0};
          const ncad::EvalSample s =
              ncad::sample_from_json(ncad::load_json_file(delta_points_path));
          const ncad::NcOracle split = ncad::delta_oracle(ncad::oracle_from_poly(p), delta_slot);
          return {ncad::matrix_to_json(split(s.points, s.dirs)), 0};
        },
        delta_output);
  }

  if (cmd_check->parsed()) {
    return run(
        [&]() -> Outcome {
          const std::vector<ncad::NcPolynomial> ps = load_polys(check_sources);
          std::vector<ncad::NcOracle> os;
          for (const ncad::NcPolynomial& p : ps) os.push_back(ncad::oracle_from_poly(p));
          ncad::source_base_dims(os);  // reject malformed source signatures up front
          const std::size_t k = os.size() - 1;
          bool ok = true;
          Json pairs = Json::array();
          for (std::size_t i = 0; i <= k; ++i) {
            for (std::size_t j = i; j <= k; ++j) {
              const ncad::NcPolynomial lhs = ncad::canonicalize(ncad::delta_sym(ps[j], i));
              const ncad::NcPolynomial rhs = ncad::canonicalize(ncad::delta_sym(ps[i], j + 1));
              const bool pair_ok = lhs == rhs;
              ok = ok && pair_ok;
              pairs.push_back(Json{{"i", i},
                                   {"j", j},
                                   {"ok", pair_ok},
                                   {"detail", pair_ok
                                                  ? "exact symbolic identity of the two splits"
                                                  : "the two splits differ as polynomials"}});
            }
          }
          Json doc{{"order", k}, {"ok", ok}, {"pairs", pairs}};
          if (!check_bases.empty()) {
            if (check_bases.size() != os.size())
              ncad::fail(ncad::ErrorKind::UsageError, "--base needs one file per source");
            const std::vector<ncad::PointMatrix> ys = load_points(check_bases);
            const ncad::CheckReport sampled =
                k == 0 ? ncad::check_integrability_order1(
                             os[0], ncad::order1_integrability_samples(os[0], ys[0], check_seed))
                       : ncad::check_integrability_higher(
                             os, ncad::higher_integrability_samples(os, ys, check_seed));
            ok = ok && sampled.ok;
            doc["ok"] = ok;
            doc["sampled"] = ncad::report_to_json(sampled);
          }
          return {doc, ok ? 0 : 1};
        },
        check_output);
  }

  if (cmd_int->parsed()) {
    return run(
        [&]() -> Outcome {
          if (int_sources.size() != int_slot_count || int_bases.size() != int_slot_count)
            ncad::fail(ncad::ErrorKind::UsageError,
                       "--slot-count must equal the number of --F and --base entries");
          const std::vector<ncad::NcPolynomial> ps = load_polys(int_sources);
          std::vector<ncad::NcOracle> os;
          for (const ncad::NcPolynomial& p : ps) os.push_back(ncad::oracle_from_poly(p));
          const std::vector<ncad::PointMatrix> ys = load_points(int_bases);
          if (int_slot_count == 1) {
            const ncad::Scalar c =
                int_c.empty() ? ncad::Scalar(0) : ncad::scalar_from_string(int_c);
            const ncad::Antiderivative ad = ncad::integrate_order1(os[0], ys[0], c);
            return {Json{{"order", 0},
                         {"base_points", Json::array({ncad::point_to_json(ys[0])})},
                         {"base_value", ncad::matrix_to_json(ad.base_value())},
                         {"constant", ncad::scalar_to_string(c)},
                         {"recipe", kRecipeOrder0}},
                    0};
          }
          if (!int_c.empty())
            ncad::fail(ncad::ErrorKind::UsageError, "--c applies only to the single-slot form");
          const ncad::Antiderivative ad = ncad::integrate_higher(os, ys);
          Json base_points = Json::array();
          for (const ncad::PointMatrix& y : ys) base_points.push_back(ncad::point_to_json(y));
          return {Json{{"order", ad.order},
                       {"base_points", base_points},
                       {"base_map", ncad::map_to_json(ad.base)},
                       {"recipe", kRecipeHigher}},
                  0};
        },
        int_output);
  }

  if (cmd_ip->parsed()) {
    return run(
        [&]() -> Outcome {
          const ncad::NcPolynomial p = ncad::poly_from_json(ncad::load_json_file(ip_poly_path));
          return {ncad::poly_to_json(ncad::integrate_poly(p, ip_slot)), 0};
        },
        ip_output);
  }

  if (cmd_der->parsed()) {
    return run(
        [&]() -> Outcome {
          const ncad::NcPolynomial p = ncad::poly_from_json(ncad::load_json_file(der_poly_path));
          const ncad::PointMatrix y = ncad::point_from_json(ncad::load_json_file(der_base_path));
          const ncad::Scalar c = ncad::scalar_from_string(der_c);
          const ncad::DerivationTable table =
              ncad::derivation_table_order0(ncad::oracle_from_poly(p), y);
          const ncad::ScalarMatrix n = ncad::inner_solve(table, c);
          return {Json{{"base", ncad::point_to_json(y)},
                       {"c", ncad::scalar_to_string(c)},
                       {"table", ncad::table_to_json(table)},
                       {"N", ncad::matrix_to_json(n)}},
                  0};
        },
        der_output);
  }

  // selftest is the only remaining verb.
  return run(
      [&]() -> Outcome {
        const std::vector<ncad::SelftestRow> rows = ncad::run_selftest(selftest_seed);
        bool ok = true;
        Json out_rows = Json::array();
        for (const ncad::SelftestRow& row : rows) {
          ok = ok && row.report.ok;
          out_rows.push_back(Json{{"name", row.name},
                                  {"ok", row.report.ok},
                                  {"checked", row.report.checked},
                                  {"detail", row.report.detail}});
        }
        return {Json{{"seed", selftest_seed}, {"ok", ok}, {"rows", out_rows}}, ok ? 0 : 1};
      },
      selftest_output);
}
