#pragma once

// JSON-lines and CSV encodings of the library's records. Integers that may
// exceed 64 bits are written as decimal strings.

#include <string>
#include <vector>

#include <json.hpp>

#include "smoothdigits/bounds.hpp"
#include "smoothdigits/experiments.hpp"
#include "smoothdigits/factor.hpp"

namespace smoothdigits::io {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

Json header();

Json to_json(const Threshold& t);
Json to_json(const ThresholdCheck& c);
Json to_json(const Factorization& f);
Json to_json(const InequalityRow& r);
Json to_json(const TraceReport& r);
Json to_json(const GapReport& g);
Json to_json(const SurveyRecord& r);
Json to_json(const WindowSummary& w);
Json to_json(const StewartRow& r);
Json to_json(const CyclotomicReport& r);
Json to_json(const SearchHit& h);

/// Factorization summary used by the `factor` command.
Json factor_summary(const Factorization& f, const PrimeSet* s);

/// CSV field quoting (RFC 4180) and a row joiner.
std::string csv_field(const std::string& s);
std::string csv_row(const std::vector<std::string>& fields);

/// Shortest round-trip text for a double, as JSON would print it.
std::string number(double v);

std::vector<std::string> survey_csv_header();
std::vector<std::string> survey_csv_row(const SurveyRecord& r);
std::vector<std::string> stewart_csv_header();
std::vector<std::string> stewart_csv_row(const StewartRow& r);
std::vector<std::string> trace_csv_header();
std::vector<std::string> trace_csv_row(const mpz_class& n, const TraceReport& t, const InequalityRow& row);
std::vector<std::string> cyclo_csv_header();
std::vector<std::string> cyclo_csv_row(const CyclotomicReport& r);
std::vector<std::string> search_csv_header();
std::vector<std::string> search_csv_row(const SearchHit& h);
std::vector<std::string> factor_csv_header();
std::vector<std::string> factor_csv_row(const Factorization& f, const PrimeSet* s);

}  // namespace smoothdigits::io
