#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "inv/campaign.hpp"

namespace {

inv::CampaignOptions small_campaign(int jobs) {
  inv::CampaignOptions o;
  o.targets = {"(((....)))", "(((..[[[..)))..]]]"};
  o.trials = 4;
  o.seed = 11;
  o.jobs = jobs;
  return o;
}

std::string render(const inv::CampaignOptions& o, const std::vector<inv::TrialResult>& r,
                   inv::OutputFormat f) {
  std::ostringstream out;
  inv::write_results(out, f, o, r);
  return out.str();
}

}  // namespace

TEST_CASE("campaign results come back in trial order with derived seeds") {
  const inv::ExhaustiveFolder folder;
  const auto o = small_campaign(1);
  const auto results = inv::run_campaign(o, folder);
  REQUIRE(results.size() == 8);
  for (std::size_t t = 0; t < results.size(); ++t) {
    CHECK(results[t].target_index == static_cast<int>(t / 4));
    CHECK(results[t].trial == static_cast<int>(t % 4));
    CHECK(results[t].seed == 11 + t % 4);
    if (results[t].outcome.sequence) CHECK(results[t].reverified);
  }
  const auto reports = inv::summarize(o, results);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].trials == 4);
  CHECK(reports[0].successes <= 4);
  CHECK(reports[1].length == 18);
  CHECK(reports[0].seeds == std::vector<std::uint64_t>{11, 12, 13, 14});
}

TEST_CASE("jsonl output is independent of the job count and parses back") {
  const inv::ExhaustiveFolder folder;
  const auto one = small_campaign(1);
  const auto four = small_campaign(4);
  const std::string a = render(one, inv::run_campaign(one, folder), inv::OutputFormat::Jsonl);
  const std::string b = render(four, inv::run_campaign(four, folder), inv::OutputFormat::Jsonl);
  CHECK(a == b);
  std::istringstream in(a);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK((j.contains("status") || j.contains("summary")));
    ++rows;
  }
  CHECK(rows == 8 + 2);
}

TEST_CASE("text and tsv layouts") {
  const inv::ExhaustiveFolder folder;
  const auto o = small_campaign(1);
  const auto results = inv::run_campaign(o, folder);
  const std::string text = render(o, results, inv::OutputFormat::Text);
  CHECK(text.find("structure\tlength\ttrials\ttotal_time_s\tsuccess_rate") != std::string::npos);
  const std::string tsv = render(o, results, inv::OutputFormat::Tsv);
  CHECK(tsv.rfind("target\tlength\ttrial\tseed\tstatus", 0) == 0);
  CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 9);
  CHECK_THROWS_AS(inv::parse_format("xml"), inv::Error);
}

TEST_CASE("traces are tagged per trial") {
  const inv::ExhaustiveFolder folder;
  const auto o = small_campaign(1);
  const auto results = inv::run_campaign(o, folder);
  std::ostringstream out;
  inv::write_traces(out, results);
  std::istringstream in(out.str());
  std::string line;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("trial"));
    CHECK(j.contains("phase"));
  }
}
