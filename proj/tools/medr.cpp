#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "medr/dataset.hpp"
#include "medr/errors.hpp"
#include "medr/harness.hpp"
#include "medr/mechanism.hpp"
#include "medr/serialize.hpp"
#include "medr/service.hpp"
#include "medr/service_http.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitParse = 3;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw medr::ParseError("cannot write '" + path + "'");
  out << content;
}

struct SolveArgs {
  std::string bids_path;
  std::string config_path;
  std::string target;
  std::string alpha;
  std::string gamma;
  std::string epsilon;
  std::string algorithm = "fptas";
  bool payments = false;
};

int run_solve(const SolveArgs& args) {
  medr::Instance instance = medr::load_bids(args.bids_path);
  if (!args.config_path.empty()) instance.config = medr::load_config_file(args.config_path);
  if (!args.target.empty()) {
    medr::Rational w = medr::Rational::parse(args.target);
    if (!w.is_integer()) throw medr::ParseError("--target must be an integer MW value");
    instance.config.target_mw = w.num();
  }
  if (!args.alpha.empty()) instance.config.bes_unit_cost = medr::Rational::parse(args.alpha);
  if (!args.gamma.empty()) instance.config.pue = medr::Rational::parse(args.gamma);
  if (!args.epsilon.empty()) instance.config.epsilon = medr::Rational::parse(args.epsilon);

  medr::Algorithm algorithm = medr::algorithm_from_name(args.algorithm);
  if (args.payments) {
    medr::MechanismOutcome outcome = medr::run_mechanism(instance, algorithm);
    std::cout << medr::serialize_outcome(outcome) << "\n";
  } else {
    medr::AllocationResult allocation = medr::solve(instance, algorithm);
    nlohmann::json j = medr::allocation_to_json(allocation);
    j["algorithm"] = args.algorithm;
    std::cout << j.dump() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reverse-auction engine for emergency demand response in colocation data centers"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "clear one instance from a bid CSV");
  solve->add_option("--bids", solve_args.bids_path, "bid CSV (tenant_id,size_mw,cost_usd)")->required();
  solve->add_option("--config", solve_args.config_path, "config file (key=value lines or JSON)");
  solve->add_option("--target", solve_args.target, "EDR reduction target W in MW");
  solve->add_option("--alpha", solve_args.alpha, "storage cost in $/MWh");
  solve->add_option("--gamma", solve_args.gamma, "power usage effectiveness");
  solve->add_option("--epsilon", solve_args.epsilon, "accuracy knob of the approximate solver");
  solve->add_option("--algorithm", solve_args.algorithm, "dopt, fptas or bes")
      ->check(CLI::IsMember({"dopt", "fptas", "bes"}));
  solve->add_flag("--payments", solve_args.payments, "also compute threshold payments");

  std::string sweep_kind;
  std::string sweep_out;
  CLI::App* sweep = app.add_subcommand("sweep", "approximation-ratio sweep over the event hours");
  sweep->add_option("kind", sweep_kind, "swept parameter")->required()->check(CLI::IsMember({"alpha", "gamma", "epsilon"}));
  sweep->add_option("--out", sweep_out, "output CSV path")->required();

  std::string report_kind;
  std::string report_out;
  CLI::App* report = app.add_subcommand("report", "utility or storage-comparison report");
  report->add_option("kind", report_kind, "report type")->required()->check(CLI::IsMember({"utility", "bes"}));
  report->add_option("--out", report_out, "output CSV path")->required();

  int gen_hour = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  std::int64_t gen_scale = 100;
  CLI::App* gen = app.add_subcommand("gen", "generate a random instance for an event hour");
  gen->add_option("--hour", gen_hour, "event hour (5..11, 16..19)")->required();
  gen->add_option("--seed", gen_seed, "generator seed")->required();
  gen->add_option("--out", gen_out, "output bid CSV path")->required();
  gen->add_option("--scale", gen_scale, "size scale factor (1 = raw formula)");

  std::string listen;
  std::string state_dir = "medr_state";
  std::size_t max_bids = 64;
  CLI::App* serve = app.add_subcommand("serve", "run the auction HTTP service");
  serve->add_option("--listen", listen, "host:port (default from MEDR_LISTEN, else 127.0.0.1:8080)");
  serve->add_option("--state-dir", state_dir, "directory for append-only auction logs");
  serve->add_option("--max-bids", max_bids, "synchronous clearing size bound");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(solve_args);

    if (*sweep) {
      std::vector<medr::RatioRecord> records;
      if (sweep_kind == "alpha") records = medr::sweep_alpha();
      if (sweep_kind == "gamma") records = medr::sweep_gamma();
      if (sweep_kind == "epsilon") records = medr::sweep_epsilon();
      write_file(sweep_out, medr::ratio_records_csv(records));
      std::cout << records.size() << " records -> " << sweep_out << "\n";
      return 0;
    }

    if (*report) {
      if (report_kind == "utility") {
        auto rows = medr::utility_report();
        write_file(report_out, medr::utility_csv(rows));
        std::cout << rows.size() << " rows -> " << report_out << "\n";
      } else {
        auto rows = medr::bes_comparison();
        write_file(report_out, medr::bes_csv(rows));
        std::cout << rows.size() << " rows -> " << report_out << "\n";
      }
      return 0;
    }

    if (*gen) {
      medr::GenerationParams params;
      params.seed = gen_seed;
      params.size_scale = gen_scale;
      medr::Instance instance = medr::generate_instance(medr::calendar_row(gen_hour), params, medr::Rational{180},
                                                        medr::Rational{8, 5}, medr::Rational{1, 2});
      medr::save_bids(instance, gen_out);
      std::cout << instance.bids.size() << " bids -> " << gen_out << "\n";
      return 0;
    }

    if (*serve) {
      if (listen.empty()) {
        const char* env = std::getenv("MEDR_LISTEN");
        listen = env != nullptr ? env : "127.0.0.1:8080";
      }
      medr::AuctionService service{state_dir, max_bids};
      return medr::run_service(service, listen);
    }
  } catch (const medr::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const medr::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
