#include <doctest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "rcsim/metrics.hpp"
#include "rcsim/mock_llm.hpp"

using namespace rcsim;

namespace {

Gateway mock_gateway() {
  return Gateway(std::make_shared<MockBackend>(), BackendConfig{},
                 std::chrono::milliseconds(1));
}

EmbeddingVector vec(std::vector<double> v) { return {std::move(v), "t"}; }

// Brute-force recall similarity straight from the definition, computed on
// raw mock embeddings without going through the metric under test.
double oracle_review_similarity(const std::vector<std::string>& gen,
                                const std::vector<std::string>& ref) {
  double total = 0.0;
  for (const std::string& r : ref) {
    EmbeddingVector rv{MockBackend::trigram_embedding(r), "m"};
    double best = -1.0;
    for (const std::string& g : gen) {
      best = std::max(best, cosine({MockBackend::trigram_embedding(g), "m"}, rv));
    }
    total += best;
  }
  return total / static_cast<double>(ref.size());
}

class FixedReplyBackend : public LlmBackend {
 public:
  explicit FixedReplyBackend(std::string reply) : reply_(std::move(reply)) {}
  std::string complete(const Prompt&, const CompletionParams&) override { return reply_; }
  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts,
                                     const std::string& model) override {
    return std::vector<EmbeddingVector>(texts.size(), {{1.0}, model});
  }

 private:
  std::string reply_;
};

}  // namespace

TEST_CASE("cosine") {
  CHECK(cosine(vec({3, 4, 5}), vec({3, 4, 5})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cosine(vec({1, 0}), vec({0, 1})) == 0.0);
  // dot = 32, |u| = sqrt(14), |v| = sqrt(77); hand value 0.974631846
  CHECK(cosine(vec({1, 2, 3}), vec({4, 5, 6})) == doctest::Approx(0.974631846).epsilon(1e-8));
  CHECK(cosine(vec({1, 0}), vec({-1, 0})) == doctest::Approx(-1.0).epsilon(1e-12));

  SUBCASE("length mismatch") {
    try {
      cosine(vec({1, 2}), vec({1, 2, 3}));
      FAIL("expected EvalError");
    } catch (const EvalError& e) {
      CHECK(e.code() == EvalErrorCode::LengthMismatch);
    }
  }
  SUBCASE("zero vector") {
    try {
      cosine(vec({0, 0}), vec({1, 0}));
      FAIL("expected EvalError");
    } catch (const EvalError& e) {
      CHECK(e.code() == EvalErrorCode::ZeroVector);
    }
  }
}

TEST_CASE("paper similarity") {
  Gateway gw = mock_gateway();

  SUBCASE("identical papers score 1 on every question") {
    Paper5Q p{{"alpha", "beta", "gamma", "delta", "epsilon"}};
    PaperSimilarity s = paper_similarity(p, p, gw);
    for (double q : s.per_question) CHECK(q == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.overall == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("disjoint-trigram answers score 0 overall") {
    // bucket-disjoint pairs verified in the embedding tests
    Paper5Q gen{{"aaaa", "aaaa", "aaaa", "aaaa", "aaaa"}};
    Paper5Q ref{{"bbbb", "bbbb", "bbbb", "bbbb", "bbbb"}};
    PaperSimilarity s = paper_similarity(gen, ref, gw);
    CHECK(s.overall == 0.0);
  }
  SUBCASE("per-question sims {1,1,0,0,0} average to 0.4") {
    Paper5Q gen{{"same one", "same two", "aaaa", "aaaa", "aaaa"}};
    Paper5Q ref{{"same one", "same two", "bbbb", "bbbb", "bbbb"}};
    PaperSimilarity s = paper_similarity(gen, ref, gw);
    CHECK(s.per_question[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.per_question[3] == 0.0);
    CHECK(s.overall == doctest::Approx(0.4).epsilon(1e-9));
  }
  SUBCASE("all ten answers go out in a single embedding batch") {
    Gateway gw2 = mock_gateway();
    Paper5Q p{{"a1", "a2", "a3", "a4", "a5"}};
    paper_similarity(p, p, gw2);
    CHECK(gw2.embedding_count() == 1);
  }
  SUBCASE("overall equals the mean of per-question values") {
    std::mt19937_64 rng(501);
    for (int i = 0; i < 20; ++i) {
      PaperSimilarity s = paper_similarity(testgen::random_paper5q(rng),
                                           testgen::random_paper5q(rng), gw);
      double mean = 0.0;
      for (double q : s.per_question) mean += q;
      mean /= 5.0;
      CHECK(std::abs(s.overall - mean) < 1e-12);
    }
  }
  SUBCASE("symmetric in its arguments") {
    std::mt19937_64 rng(502);
    for (int i = 0; i < 20; ++i) {
      Paper5Q a = testgen::random_paper5q(rng);
      Paper5Q b = testgen::random_paper5q(rng);
      CHECK(paper_similarity(a, b, gw).overall == paper_similarity(b, a, gw).overall);
    }
  }
  SUBCASE("alignment is positional: permuting answers changes the score") {
    Paper5Q a{{"graph kernels", "policy search", "sparse bounds", "robust priors",
               "latent signals"}};
    Paper5Q rotated{{"policy search", "sparse bounds", "robust priors", "latent signals",
                     "graph kernels"}};
    Gateway gw2 = mock_gateway();
    double aligned = paper_similarity(a, a, gw2).overall;
    double shifted = paper_similarity(a, rotated, gw2).overall;
    CHECK(aligned > shifted);
  }
}

TEST_CASE("review similarity") {
  Gateway gw = mock_gateway();

  SUBCASE("identical bullet lists score 1") {
    std::vector<std::string> bullets{"clear writing", "strong results"};
    CHECK(review_similarity(bullets, bullets, gw) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("recall semantics: extra generated bullets never hurt") {
    std::vector<std::string> ref{"the single reference point"};
    std::vector<std::string> gen{"the single reference point", "completely unrelated junk"};
    CHECK(review_similarity(gen, ref, gw) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("3x4 instance equals the brute-force double loop") {
    std::vector<std::string> gen{"graph models", "policy search", "robust training"};
    std::vector<std::string> ref{"graph kernels", "policy methods", "sparse data",
                                 "robust training"};
    CHECK(review_similarity(gen, ref, gw) ==
          doctest::Approx(oracle_review_similarity(gen, ref)).epsilon(1e-12));
  }
  SUBCASE("not symmetric") {
    std::vector<std::string> gen{"alpha topic", "beta topic"};
    std::vector<std::string> ref{"alpha topic"};
    double forward = review_similarity(gen, ref, gw);
    double backward = review_similarity(ref, gen, gw);
    CHECK(forward == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(backward < forward);
  }
  SUBCASE("appending a bullet never decreases the score") {
    std::mt19937_64 rng(503);
    for (int i = 0; i < 50; ++i) {
      auto gen = testgen::random_bullets(rng);
      auto ref = testgen::random_bullets(rng);
      double before = review_similarity(gen, ref, gw);
      gen.push_back(testgen::random_line(rng));
      CHECK(review_similarity(gen, ref, gw) >= before);
    }
  }
  SUBCASE("permuting generated bullets changes nothing") {
    std::mt19937_64 rng(504);
    for (int i = 0; i < 50; ++i) {
      auto gen = testgen::random_bullets(rng, 2, 6);
      auto ref = testgen::random_bullets(rng);
      double before = review_similarity(gen, ref, gw);
      std::shuffle(gen.begin(), gen.end(), rng);
      CHECK(review_similarity(gen, ref, gw) == before);
    }
  }
  SUBCASE("empty lists rejected") {
    CHECK_THROWS_AS(review_similarity({}, {"x"}, gw), EvalError);
    CHECK_THROWS_AS(review_similarity({"x"}, {}, gw), EvalError);
  }
}

TEST_CASE("score delta") {
  CHECK(score_delta(5, 5.0) == 0.0);
  CHECK(score_delta(7, 5.33) == 1.67);  // decimal-exact
  CHECK(score_delta(1, 10.0) == 9.0);
  CHECK(score_delta(3, 6.5) == 3.5);

  SUBCASE("generated side must be an integer score") {
    CHECK_THROWS_AS(score_delta(0, 5.0), EvalError);
    CHECK_THROWS_AS(score_delta(11, 5.0), EvalError);
  }
  SUBCASE("reference side must lie in [1,10]") {
    CHECK_THROWS_AS(score_delta(5, 0.5), EvalError);
    CHECK_THROWS_AS(score_delta(5, 10.5), EvalError);
  }
}

TEST_CASE("fine-grained judge") {
  SUBCASE("mock reply carries all ten fields in range") {
    Gateway gw = mock_gateway();
    Paper5Q a{{"p", "i", "h", "g", "m"}};
    Paper5Q b{{"p2", "i2", "h2", "g2", "m2"}};
    JudgeScores s = judge_fine_grained(a, b, gw);
    for (int v : {s.topic_consistency, s.method_consistency, s.factual_consistency,
                  s.claim_consistency, s.application_context_consistency, s.overall_similarity,
                  s.novelty_reference, s.feasibility_reference, s.novelty_generated,
                  s.feasibility_generated}) {
      CHECK(v >= 0);
      CHECK(v <= 10);
    }
  }
  SUBCASE("missing field") {
    Gateway gw(std::make_shared<FixedReplyBackend>("{\"Topic Consistency\": 5}"),
               BackendConfig{}, std::chrono::milliseconds(1));
    Paper5Q p{{"a", "b", "c", "d", "e"}};
    try {
      judge_fine_grained(p, p, gw);
      FAIL("expected EvalError");
    } catch (const EvalError& e) {
      CHECK(e.code() == EvalErrorCode::ParseFailure);
    }
  }
  SUBCASE("out-of-range field") {
    std::string reply =
        "{\"Topic Consistency\": 11, \"Method Consistency\": 1, \"Factual Consistency\": 1,"
        "\"Claim Consistency\": 1, \"Application Context Consistency\": 1,"
        "\"Overall Semantic Similarity\": 1, \"Novelty of Reference Proposal\": 1,"
        "\"Feasibility of Reference Proposal\": 1, \"Novelty of Generated Proposal\": 1,"
        "\"Feasibility of Generated Proposal\": 1}";
    Gateway gw(std::make_shared<FixedReplyBackend>(reply), BackendConfig{},
               std::chrono::milliseconds(1));
    Paper5Q p{{"a", "b", "c", "d", "e"}};
    try {
      judge_fine_grained(p, p, gw);
      FAIL("expected EvalError");
    } catch (const EvalError& e) {
      CHECK(e.code() == EvalErrorCode::FieldOutOfRange);
    }
  }
  SUBCASE("fenced JSON is tolerated") {
    std::string reply =
        "```json\n{\"Topic Consistency\": 5, \"Method Consistency\": 5,"
        "\"Factual Consistency\": 5, \"Claim Consistency\": 5,"
        "\"Application Context Consistency\": 5, \"Overall Semantic Similarity\": 5,"
        "\"Novelty of Reference Proposal\": 5, \"Feasibility of Reference Proposal\": 5,"
        "\"Novelty of Generated Proposal\": 5, \"Feasibility of Generated Proposal\": 5}\n```";
    Gateway gw(std::make_shared<FixedReplyBackend>(reply), BackendConfig{},
               std::chrono::milliseconds(1));
    Paper5Q p{{"a", "b", "c", "d", "e"}};
    CHECK(judge_fine_grained(p, p, gw).overall_similarity == 5);
  }
}

TEST_CASE("aggregate_report") {
  SUBCASE("single row") {
    MetricRow row{"t1", {{"difficulty", "easy"}}, {{"overall", 0.5}}};
    Report r = aggregate_report({row}, {"difficulty"});
    REQUIRE(r.groups.size() == 1);
    CHECK(r.groups[0].means.at("overall") == 0.5);
    CHECK(r.overall.means.at("overall") == 0.5);
    CHECK(r.overall.count == 1);
  }
  SUBCASE("spec example: easy {0.7,0.8}, hard {0.4}") {
    std::vector<MetricRow> rows{
        {"t1", {{"difficulty", "easy"}}, {{"overall", 0.7}}},
        {"t2", {{"difficulty", "easy"}}, {{"overall", 0.8}}},
        {"t3", {{"difficulty", "hard"}}, {{"overall", 0.4}}},
    };
    Report r = aggregate_report(rows, {"difficulty"});
    REQUIRE(r.groups.size() == 2);
    CHECK(r.groups[0].group.at("difficulty") == "easy");
    CHECK(r.groups[0].means.at("overall") == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(r.groups[1].means.at("overall") == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(r.overall.means.at("overall") ==
          doctest::Approx((0.7 + 0.8 + 0.4) / 3.0).epsilon(1e-12));
  }
  SUBCASE("hundred synthetic rows match a brute-force recomputation") {
    std::mt19937_64 rng(601);
    std::vector<MetricRow> rows;
    for (int i = 0; i < 100; ++i) {
      MetricRow row;
      row.task_id = "t" + std::to_string(i);
      row.groups["mode"] = (i % 4 == 0) ? "self" : (i % 4 == 1 ? "agent" : "global");
      row.values["overall"] = static_cast<double>(rng() % 1000) / 1000.0;
      if (i % 3 == 0) row.values["delta"] = static_cast<double>(rng() % 90) / 10.0;
      rows.push_back(std::move(row));
    }
    Report r = aggregate_report(rows, {"mode"});

    // oracle: plain accumulation per group label
    std::map<std::string, std::pair<double, int>> expect_overall;
    for (const MetricRow& row : rows) {
      auto& slot = expect_overall[row.groups.at("mode")];
      slot.first += row.values.at("overall");
      slot.second += 1;
    }
    for (const GroupSummary& g : r.groups) {
      const auto& slot = expect_overall.at(g.group.at("mode"));
      CHECK(g.means.at("overall") ==
            doctest::Approx(slot.first / slot.second).epsilon(1e-12));
    }
    double total = 0.0;
    int delta_n = 0;
    double delta_sum = 0.0;
    for (const MetricRow& row : rows) {
      total += row.values.at("overall");
      if (row.values.count("delta")) {
        delta_sum += row.values.at("delta");
        ++delta_n;
      }
    }
    CHECK(r.overall.means.at("overall") == doctest::Approx(total / 100.0).epsilon(1e-12));
    CHECK(r.overall.means.at("delta") ==
          doctest::Approx(delta_sum / delta_n).epsilon(1e-12));
    CHECK(r.overall.metric_counts.at("delta") == delta_n);
  }
  SUBCASE("empty input rejected") {
    CHECK_THROWS_AS(aggregate_report({}, {"mode"}), EvalError);
  }
}
