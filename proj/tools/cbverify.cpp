#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "cbv/error.hpp"
#include "cbv/genfunc.hpp"
#include "cbv/registry.hpp"
#include "cbv/report_json.hpp"
#include "cbv/verifier.hpp"

namespace {

using namespace cbv;

enum Exit { kOk = 0, kContract = 1, kUsage = 2, kDomain = 3 };

bool verdict_as_expected(const VerificationReport& r) {
  return expected_to_fail(r.status) ? r.verdict == Verdict::FAIL : r.verdict == Verdict::PASS;
}

void print_report_row(const VerificationReport& r) {
  const int cap = std::max(r.agreed_digits + 1, 4);
  std::cout << std::left << std::setw(17) << r.id << std::setw(13) << to_string(r.verdict) << "digits "
            << r.agreed_digits << "/" << r.requested_digits << "  terms " << r.terms_used << "  "
            << to_string(r.tail_strategy) << "\n"
            << "    lhs " << r.lhs.to_string(cap) << "\n"
            << "    rhs " << r.rhs.to_string(cap) << "\n";
  if (!r.note.empty()) std::cout << "    note " << r.note << "\n";
}

GF parse_gf(const std::string& text, int k) {
  const std::string shifted = "GF_SHIFTED(";
  if (text.rfind(shifted, 0) == 0 && text.back() == ')') {
    return GF{GFName::SHIFTED, std::stoi(text.substr(shifted.size(), text.size() - shifted.size() - 1))};
  }
  return GF{parse_gf_name(text), k};
}

int run(int argc, char** argv) {
  CLI::App app{"Rigorous numerical verification of central-binomial series identities"};
  app.require_subcommand(1);
  std::string format = "table";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json"}));
  };

  auto* list = app.add_subcommand("list", "Print the identity catalog");
  std::string status_filter, family_filter;
  list->add_option("--status", status_filter, "Only entries with this status");
  list->add_option("--family", family_filter, "Only entries of this family");
  add_format(list);

  auto* verify_cmd = app.add_subcommand("verify", "Verify one identity or the whole suite");
  std::string id;
  bool all = false;
  std::optional<int> digits;
  long max_terms = kDefaultMaxTerms;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  auto* id_opt = verify_cmd->add_option("--id", id, "Identity id");
  auto* all_opt = verify_cmd->add_flag("--all", all, "Verify every catalog entry");
  id_opt->excludes(all_opt);
  verify_cmd->add_option("--digits", digits, "Requested agreed digits (default: per-class policy)")
      ->check(CLI::Range(1, 10000));
  verify_cmd->add_option("--max-terms", max_terms, "Term budget per series")->check(CLI::Range(1L, kMaxStreamIndex));
  verify_cmd->add_option("--workers", workers, "Worker threads for --all")->check(CLI::Range(1u, 1024u));
  add_format(verify_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a generating function in closed form");
  std::string gf_text, x_text;
  int k = 0;
  int eval_digits = 20;
  eval_cmd->add_option("--gf", gf_text, "Generating function name, e.g. GF_M or GF_SHIFTED(2)")->required();
  eval_cmd->add_option("--x", x_text, "Exact rational argument p/q")->required();
  eval_cmd->add_option("--k", k, "Shift for GF_SHIFTED")->check(CLI::Range(0, 64));
  eval_cmd->add_option("--digits", eval_digits, "Decimal digits")->check(CLI::Range(1, 10000));
  add_format(eval_cmd);

  auto* const_cmd = app.add_subcommand("constants", "Print the named constants");
  int const_digits = 30;
  const_cmd->add_option("--digits", const_digits, "Decimal digits")->check(CLI::Range(1, 10000));
  add_format(const_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*list) {
      ListFilter f;
      if (!status_filter.empty()) f.status = parse_status(status_filter);
      if (!family_filter.empty()) f.family = parse_family(family_filter);
      const auto entries = list_identities(f);
      if (format == "json") {
        std::cout << dump(catalog_json(entries));
      } else {
        for (const auto& e : entries) {
          std::string eqs;
          for (const auto& q : e.equations) eqs += (eqs.empty() ? "" : ",") + q;
          std::cout << std::left << std::setw(17) << e.id << std::setw(7) << eqs << std::setw(23)
                    << to_string(e.status) << std::setw(15) << to_string(e.tail) << e.domain << "\n";
        }
      }
      return kOk;
    }

    if (*verify_cmd) {
      const DigitsPolicy policy = DigitsPolicy::from_environment();
      if (all) {
        DigitsPolicy p = policy;
        if (digits) p = DigitsPolicy{*digits, *digits, *digits, *digits, *digits, false};
        const SuiteResult suite = verify_all(p, workers, max_terms);
        if (format == "json") {
          std::cout << dump(to_json(suite));
        } else {
          for (const auto& r : suite.reports) print_report_row(r);
          std::cout << "\nexpected failures: " << suite.summary.expected_failures.size()
                    << ", unexpected: " << suite.summary.unexpected.size() << "\n";
          for (const auto& u : suite.summary.unexpected) std::cout << "  unexpected: " << u << "\n";
        }
        return suite.summary.contract_ok ? kOk : kContract;
      }
      if (id.empty()) throw UsageError("verify needs --id or --all");
      const IdentityEntry& e = Registry::instance().get(id);
      const VerificationReport r = verify(e, digits.value_or(policy.digits_for(e)), max_terms);
      if (format == "json") std::cout << dump(to_json(r));
      else print_report_row(r);
      return verdict_as_expected(r) ? kOk : kContract;
    }

    if (*eval_cmd) {
      const GF gf = parse_gf(gf_text, k);
      const SurdQ5 x(parse_rational(x_text));
      const Ball v = gf_eval(gf, x, precision_for_digits(eval_digits));
      const std::string text = v.to_string(eval_digits);
      if (format == "json") {
        std::cout << dump(Json{{"gf", to_string(gf)}, {"x", x_text}, {"digits", eval_digits}, {"value", text}});
      } else {
        std::cout << to_string(gf) << "(" << x_text << ") = " << text << "\n";
      }
      return kOk;
    }

    if (*const_cmd) {
      const Precision prec = precision_for_digits(const_digits);
      Json j = Json::object();
      for (ConstantName c : kAllConstants) {
        const std::string text = constant(c, prec).to_string(const_digits);
        if (format == "json") j[std::string(to_string(c))] = text;
        else std::cout << std::left << std::setw(10) << to_string(c) << " " << text << "\n";
      }
      if (format == "json") std::cout << dump(j);
      return kOk;
    }
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kContract;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
