#include <doctest.h>

#include "persona/emotion.hpp"
#include "persona/synth.hpp"

#include "oracles.hpp"

using namespace persona;

namespace {

// the 8-document toy corpus used throughout; two docs per class
std::vector<LabeledText> toy_corpus() {
    return {
        {"rage rage mad", EmotionLabel::Angry},
        {"mad grr", EmotionLabel::Angry},
        {"lol haha", EmotionLabel::Funny},
        {"haha joke joke", EmotionLabel::Funny},
        {"wow shock", EmotionLabel::Surprised},
        {"wow gasp sudden", EmotionLabel::Surprised},
        {"tears touching", EmotionLabel::Moving},
        {"warm tears hug", EmotionLabel::Moving},
    };
}

std::set<std::string> toy_lexicon() {
    return {"rage", "mad", "grr", "lol", "haha", "joke", "wow",
            "shock", "gasp", "sudden", "tears", "touching", "warm", "hug"};
}

std::vector<std::pair<std::string, int>> as_oracle_docs(const std::vector<LabeledText>& corpus) {
    std::vector<std::pair<std::string, int>> docs;
    for (const auto& d : corpus) docs.emplace_back(d.text, static_cast<int>(d.label));
    return docs;
}

} // namespace

TEST_CASE("balanced corpus gives uniform priors") {
    auto model = EmotionModel::train(toy_corpus(), toy_lexicon(), 2.0, 1.0);
    for (int c = 0; c < kEmotionCount; ++c)
        CHECK(model.prior(static_cast<EmotionLabel>(c)) == doctest::Approx(0.25));
}

TEST_CASE("boost 1 with empty lexicon equals plain multinomial NB") {
    auto model = EmotionModel::train(toy_corpus(), {}, 1.0, 1.0);
    auto plain = oracle::nb_train(as_oracle_docs(toy_corpus()), {}, 1.0, 1.0);
    for (const auto& tok : plain.vocabulary)
        for (int c = 0; c < kEmotionCount; ++c)
            CHECK(model.token_probability(tok, static_cast<EmotionLabel>(c)) ==
                  doctest::Approx(oracle::nb_token_prob(plain, tok, c)).epsilon(1e-12));
}

TEST_CASE("toy corpus with smoothing 1 and boost 2 reproduces hand-tallied probabilities") {
    auto model = EmotionModel::train(toy_corpus(), toy_lexicon(), 2.0, 1.0);
    // angry boosted counts: rage 4, mad 4, grr 2 -> total 10; vocabulary 14
    CHECK(model.vocabulary_size() == 14);
    CHECK(model.token_probability("rage", EmotionLabel::Angry) ==
          doctest::Approx(5.0 / 24.0).epsilon(1e-12));
    CHECK(model.token_probability("lol", EmotionLabel::Angry) ==
          doctest::Approx(1.0 / 24.0).epsilon(1e-12));

    auto ref = oracle::nb_train(as_oracle_docs(toy_corpus()), toy_lexicon(), 2.0, 1.0);
    for (const auto& tok : ref.vocabulary)
        for (int c = 0; c < kEmotionCount; ++c)
            CHECK(model.token_probability(tok, static_cast<EmotionLabel>(c)) ==
                  doctest::Approx(oracle::nb_token_prob(ref, tok, c)).epsilon(1e-12));
}

TEST_CASE("empty text with uniform priors classifies as angry with a flat posterior") {
    auto model = EmotionModel::train(toy_corpus(), toy_lexicon(), 2.0, 1.0);
    auto result = model.classify("");
    CHECK(result.label == EmotionLabel::Angry);
    for (double p : result.posterior) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("class-exclusive tokens dominate classification") {
    auto model = EmotionModel::train(toy_corpus(), toy_lexicon(), 2.0, 1.0);
    CHECK(model.classify("joke joke lol").label == EmotionLabel::Funny);
    CHECK(model.classify("gasp").label == EmotionLabel::Surprised);
}

TEST_CASE("posterior of a fixed text matches hand Bayes arithmetic") {
    auto model = EmotionModel::train(toy_corpus(), toy_lexicon(), 2.0, 1.0);
    // P(rage|angry) = P(mad|angry) = 5/24, other classes 1/24 each token;
    // uniform priors cancel: posterior(angry) = 25 / (25 + 1 + 1 + 1)
    auto result = model.classify("rage mad");
    CHECK(result.label == EmotionLabel::Angry);
    CHECK(result.posterior[0] == doctest::Approx(25.0 / 28.0).epsilon(1e-9));
    for (int c = 1; c < kEmotionCount; ++c)
        CHECK(result.posterior[static_cast<size_t>(c)] ==
              doctest::Approx(1.0 / 28.0).epsilon(1e-9));

    auto ref = oracle::nb_posterior(oracle::nb_train(as_oracle_docs(toy_corpus()), toy_lexicon(),
                                                     2.0, 1.0),
                                    "rage mad unseen_token");
    auto impl = model.classify("rage mad unseen_token");
    for (int c = 0; c < kEmotionCount; ++c)
        CHECK(impl.posterior[static_cast<size_t>(c)] ==
              doctest::Approx(ref[static_cast<size_t>(c)]).epsilon(1e-9));
}

TEST_CASE("posterior always sums to one") {
    auto model = EmotionModel::train(toy_corpus(), toy_lexicon(), 2.0, 1.0);
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        std::string text = sample_text(static_cast<EmotionLabel>(trial % 4), rng, 0, 12);
        auto result = model.classify(text);
        double total = 0.0;
        for (double p : result.posterior) total += p;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("histogram counts every text exactly once") {
    auto model = EmotionModel::train(toy_corpus(), toy_lexicon(), 2.0, 1.0);
    auto empty = model.histogram({});
    CHECK(empty == std::array<long long, 4>{0, 0, 0, 0});

    // 10 texts: 6 angry, 4 funny
    std::vector<std::string> texts;
    for (int i = 0; i < 6; ++i) texts.push_back("rage mad grr");
    for (int i = 0; i < 4; ++i) texts.push_back("lol haha joke");
    auto counts = model.histogram(texts);
    CHECK(counts == std::array<long long, 4>{6, 4, 0, 0});

    Rng rng(4);
    std::vector<std::string> batch;
    std::array<long long, 4> expected{};
    for (int i = 0; i < 30; ++i) {
        batch.push_back(sample_text(static_cast<EmotionLabel>(rng.uniform_int(0, 3)), rng, 3, 9));
        ++expected[static_cast<size_t>(model.classify(batch.back()).label)];
    }
    auto hist = model.histogram(batch);
    long long total = 0;
    for (int c = 0; c < 4; ++c) {
        CHECK(hist[static_cast<size_t>(c)] == expected[static_cast<size_t>(c)]);
        total += hist[static_cast<size_t>(c)];
    }
    CHECK(total == 30);
}

TEST_CASE("boost growth never hurts a doc made of its class's lexicon tokens") {
    auto lexicon = toy_lexicon();
    double previous = 0.0;
    for (double boost : {1.0, 2.0, 4.0, 8.0}) {
        auto model = EmotionModel::train(toy_corpus(), lexicon, boost, 1.0);
        double mass = model.classify("rage mad grr").posterior[0];
        CHECK(mass >= previous - 1e-12);
        previous = mass;
    }
}

TEST_CASE("training is order-invariant") {
    auto corpus = toy_corpus();
    auto shuffled = corpus;
    std::swap(shuffled[0], shuffled[5]);
    std::swap(shuffled[2], shuffled[7]);
    std::swap(shuffled[1], shuffled[6]);
    auto a = EmotionModel::train(corpus, toy_lexicon(), 2.0, 1.0);
    auto b = EmotionModel::train(shuffled, toy_lexicon(), 2.0, 1.0);
    CHECK(a.to_json() == b.to_json());
}

TEST_CASE("training rejects bad input") {
    CHECK_THROWS_AS(EmotionModel::train({}, {}, 2.0, 1.0), ValidationError);
    CHECK_THROWS_AS(EmotionModel::train(toy_corpus(), {}, 0.5, 1.0), ValidationError);
    CHECK_THROWS_AS(EmotionModel::train(toy_corpus(), {}, 2.0, 0.0), ValidationError);
    CHECK_THROWS_AS(emotion_from_name("angsty"), ValidationError);
}

TEST_CASE("model JSON round-trips exactly") {
    auto model = EmotionModel::train(toy_corpus(), toy_lexicon(), 2.0, 1.0);
    auto j = model.to_json();
    auto restored = EmotionModel::from_json(j);
    CHECK(restored.to_json() == j);
    auto a = model.classify("rage joke wow tears");
    auto b = restored.classify("rage joke wow tears");
    CHECK(a.label == b.label);
    for (int c = 0; c < kEmotionCount; ++c)
        CHECK(a.posterior[static_cast<size_t>(c)] == b.posterior[static_cast<size_t>(c)]);
}
