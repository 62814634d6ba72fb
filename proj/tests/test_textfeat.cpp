#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "repostlab/core/corpus.hpp"
#include "repostlab/core/schema.hpp"
#include "repostlab/textfeat/lda.hpp"
#include "repostlab/textfeat/lexicons.hpp"
#include "repostlab/textfeat/post_features.hpp"
#include "repostlab/textfeat/readability.hpp"
#include "repostlab/textfeat/scorers.hpp"
#include "repostlab/textfeat/tokenize.hpp"
#include "repostlab/learners/bow.hpp"
#include "repostlab/util/strings.hpp"

using namespace repostlab;
using namespace repostlab::textfeat;

TEST_CASE("lexical stats count bytes and whitespace tokens") {
    CHECK(lexical_stats("The cat sat.") == std::pair<std::size_t, std::size_t>(12, 3));
    CHECK(lexical_stats("") == std::pair<std::size_t, std::size_t>(0, 0));
    CHECK(lexical_stats("a  b") == std::pair<std::size_t, std::size_t>(4, 2));
    // multi-byte characters count once
    CHECK(char_count("caf\xc3\xa9") == 4);
}

TEST_CASE("sentence counting follows terminator runs") {
    CHECK(sentence_count("One. Two! Three?") == 3);
    CHECK(sentence_count("Wait... what? Ok.") == 3);
    CHECK(sentence_count("e.g. test") == 1);
    CHECK(sentence_count("3.14 is pi") == 1);
    CHECK(sentence_count("no terminator") == 1);
    CHECK(sentence_count("") == 0);
    CHECK(sentence_count("   ") == 0);
    CHECK(sentence_count("...") == 1);
}

TEST_CASE("syllable heuristic handles groups and silent e") {
    CHECK(syllable_count("cat") == 1);
    CHECK(syllable_count("water") == 2);
    CHECK(syllable_count("make") == 1);   // trailing e dropped
    CHECK(syllable_count("table") == 2);  // le ending keeps its syllable
    CHECK(syllable_count("see") == 1);
    CHECK(syllable_count("idea") == 2);
    CHECK(syllable_count("beautiful") == 3);
    CHECK(syllable_count("crwth") == 1);  // vowelless floor
    CHECK(syllable_count("123") == 0);    // no alphabetic core
    CHECK(syllable_count("") == 0);
}

TEST_CASE("word tokens lowercase and keep inner apostrophes") {
    auto toks = word_tokens("Don't stop, O'Neil's 'quoted' a-b");
    REQUIRE(toks.size() == 6);
    CHECK(toks[0] == "don't");
    CHECK(toks[1] == "stop");
    CHECK(toks[2] == "o'neil's");
    CHECK(toks[3] == "quoted");
    CHECK(toks[4] == "a");
    CHECK(toks[5] == "b");
}

TEST_CASE("readability matches the frozen oracle table") {
    std::ifstream in(std::string(REPOSTLAB_DATA_DIR) + "/readability_golden.csv");
    REQUIRE(in.good());
    std::string line;
    REQUIRE(std::getline(in, line));  // header
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split(line, ',');
        REQUIRE(fields.size() == 12);
        const auto got = readability_scores(fields[0]);
        for (std::size_t i = 0; i < 11; ++i) {
            INFO("text: ", fields[0], " column ", i);
            CHECK(std::fabs(got[i] - std::stod(fields[i + 1])) <= 1e-9);
        }
        ++rows;
    }
    CHECK(rows == 20);
}

TEST_CASE("degenerate text yields nan scores and zero counts") {
    for (const std::string text : {"", "   ", "\t\n"}) {
        const auto s = readability_scores(text);
        for (int i = 0; i < 9; ++i) CHECK(std::isnan(s[i]));
        CHECK(s[9] == 0.0);
        CHECK(s[10] == 0.0);
    }
}

TEST_CASE("flesch of the three-word sentence") {
    const auto s = readability_scores("The cat sat.");
    CHECK(std::fabs(s[kFleschReadingEase] - 119.19) <= 1e-9);
}

TEST_CASE("sentiment with no lexicon hits is neutral") {
    auto reg = ScorerRegistry::builtin();
    const auto s = reg.sentiment(word_tokens("the meeting is at noon"));
    CHECK(s.neg == 0.0);
    CHECK(s.neu == 1.0);
    CHECK(s.pos == 0.0);
    CHECK(s.compound == 0.0);
    CHECK(s.main_label == 1);
}

TEST_CASE("repeated positive words sum before normalization") {
    auto reg = ScorerRegistry::builtin();
    const auto s = reg.sentiment(word_tokens("good good good"));
    const double total = 3 * 1.9;
    CHECK(s.compound == doctest::Approx(total / std::sqrt(total * total + 15.0)).epsilon(1e-12));
    CHECK(s.compound == doctest::Approx(0.8271).epsilon(1e-3));
    CHECK(s.pos == 1.0);
    CHECK(s.neg == 0.0);
    CHECK(s.main_label == 2);
}

TEST_CASE("negation flips valence direction") {
    auto reg = ScorerRegistry::builtin();
    const auto plain = reg.sentiment(word_tokens("good"));
    const auto negated = reg.sentiment(word_tokens("not good"));
    CHECK(plain.compound > 0.0);
    CHECK(negated.compound < 0.0);
    CHECK(negated.main_label == 0);
    const double v = 1.9 * -0.74;
    CHECK(negated.compound == doctest::Approx(v / std::sqrt(v * v + 15.0)).epsilon(1e-12));
}

TEST_CASE("grammar scorers check surface conventions") {
    auto reg = ScorerRegistry::builtin();
    CHECK(reg.grammar_post_score("Good day.") == 1.0);
    CHECK(reg.grammar_post_score("bad start.") == 0.75);
    CHECK(reg.grammar_post_score("No stop") == 0.75);
    CHECK(reg.grammar_post_score("Unbalanced (paren.") == 0.75);
    CHECK(reg.grammar_post_score("Two  spaces.") == 0.75);
    CHECK(reg.grammar_post_score("") == 0.0);
    // every word on the easy/valence lists spells correctly
    CHECK(reg.grammar_word_score("the good cat") == 1.0);
    CHECK(reg.grammar_word_score("the zzyzx cat") == doctest::Approx(2.0 / 3.0));
    CHECK(reg.grammar_word_score("123 456") == 1.0);  // no alphabetic tokens
}

TEST_CASE("argmax breaks ties toward the lowest index") {
    CHECK(argmax_lowest({0.2, 0.5, 0.5}) == 1);
    CHECK(argmax_lowest({1.0}) == 0);
    CHECK(argmax_lowest({0.0, 0.0, 0.0}) == 0);
}

TEST_CASE("lda k=1 recovers smoothed unigram frequencies") {
    auto model = lda_train({"apple banana apple", "banana cherry"}, 1, 42);
    REQUIRE(model.K == 1);
    REQUIRE(model.vocab_size() == 3);
    const double V = 3.0, N = 5.0, beta = 0.01;
    CHECK(model.topic_word[0][model.vocab.at("apple")] ==
          doctest::Approx((2.0 + beta) / (N + V * beta)).epsilon(1e-6));
    CHECK(model.topic_word[0][model.vocab.at("banana")] ==
          doctest::Approx((2.0 + beta) / (N + V * beta)).epsilon(1e-6));
    CHECK(model.topic_word[0][model.vocab.at("cherry")] ==
          doctest::Approx((1.0 + beta) / (N + V * beta)).epsilon(1e-6));
}

TEST_CASE("lda separates disjoint vocabularies") {
    std::vector<std::string> texts;
    for (int i = 0; i < 6; ++i) {
        texts.push_back("engine piston valve crank engine piston");
        texts.push_back("violin cello oboe flute violin cello");
    }
    // small alpha so short documents can commit to one topic
    auto model = lda_train(texts, 2, 0.1, 0.01, 300, 7);
    auto theta_a = lda_infer(model, "engine valve piston", kLdaInferSweeps, 3);
    auto theta_b = lda_infer(model, "cello flute violin", kLdaInferSweeps, 3);
    const std::size_t ta = argmax_lowest(theta_a);
    const std::size_t tb = argmax_lowest(theta_b);
    CHECK(ta != tb);
    CHECK(theta_a[ta] > 0.8);
    CHECK(theta_b[tb] > 0.8);
    // duplicating the document does not move the dominant topic
    auto theta_a2 =
        lda_infer(model, "engine valve piston engine valve piston", kLdaInferSweeps, 3);
    CHECK(argmax_lowest(theta_a2) == ta);
}

TEST_CASE("lda is deterministic for a fixed seed") {
    const std::vector<std::string> texts = {"red green blue", "blue yellow red",
                                            "green green blue", "yellow red blue"};
    auto m1 = lda_train(texts, 3, 99);
    auto m2 = lda_train(texts, 3, 99);
    CHECK(m1.topic_word == m2.topic_word);
    CHECK(lda_infer(m1, "red blue", 5) == lda_infer(m2, "red blue", 5));
}

TEST_CASE("lda infer without usable tokens is uniform") {
    auto model = lda_train({"apple banana", "banana cherry"}, 4, 1);
    for (const std::string text : {"", "the of and", "zzz qqq"}) {
        const auto theta = lda_infer(model, text, 2);
        REQUIRE(theta.size() == 4);
        for (double t : theta) CHECK(t == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("lda rejects a corpus with no content tokens") {
    CHECK_THROWS_AS(lda_train({"the a of", "and or the"}, 2, 1), std::runtime_error);
}

TEST_CASE("hashtag codes are sorted and one-based") {
    const std::string dir = testutil::tmp_dir("tf_codes");
    core::write_posts_jsonl(dir + "/posts.jsonl",
                            {testutil::make_post("p1", "u1", 100, "x", {"beta"}),
                             testutil::make_post("p2", "u1", 200, "y", {"alpha", "gamma"})});
    core::write_users_jsonl(dir + "/users.jsonl", {testutil::make_user("u1")});
    auto corpus = core::load_corpus(dir + "/posts.jsonl", dir + "/users.jsonl");
    auto codes = build_hashtag_codes(corpus);
    REQUIRE(codes.size() == 3);
    CHECK(codes.at("alpha") == 1);
    CHECK(codes.at("beta") == 2);
    CHECK(codes.at("gamma") == 3);
}

TEST_CASE("post features fill the 78-wide content block") {
    auto reg = ScorerRegistry::builtin();
    auto model = lda_train({"game win score", "rain cold water", "game score rain"}, 10, 5);
    std::map<std::string, int> codes = {{"alpha", 1}, {"beta", 2}};
    PostFeatureExtractor ex(&model, &reg, &codes);

    auto post = testutil::make_post("p", "u", 100, "Good game today.", {"beta", "alpha"});
    const auto m = ex.extract(post);
    REQUIRE(m.size() == core::kSizeM);

    const auto& names = core::feature_dictionary(core::SchemaId::M);
    auto at = [&](const std::string& name) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return m[i];
        throw std::runtime_error("missing feature " + name);
    };
    CHECK(at("M_CharNum") == 16.0);
    CHECK(at("M_WordNum") == 3.0);
    // smallest tag alphabetically wins the categorical slot
    CHECK(at("M_hashtag") == 1.0);
    CHECK(at("M_Sentiment2") < 1.0);   // "good" scores positive mass
    CHECK(at("M_Sentiment3") > 0.0);
    CHECK(at("M_SentimentMain") == 2.0);
    // probability-style features stay in range
    for (int i = 1; i <= 19; ++i) {
        const double v = at("M_TopicM" + std::to_string(i));
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
    double lda_sum = 0.0;
    for (int i = 1; i <= 10; ++i) lda_sum += at("M_TopicLDA" + std::to_string(i));
    CHECK(lda_sum == doctest::Approx(1.0).epsilon(1e-9));
    double emo_sum = 0.0;
    for (int i = 1; i <= 7; ++i) emo_sum += at("M_Emotion" + std::to_string(i));
    CHECK(emo_sum == doctest::Approx(1.0).epsilon(1e-9));

    // extraction is a pure function of the post
    CHECK(ex.extract(post) == m);

    auto unknown_tag = testutil::make_post("q", "u", 100, "plain", {"zeta"});
    const auto m2 = ex.extract(unknown_tag);
    CHECK(m2[77] == 0.0);
}

TEST_CASE("bow vocabulary ranks by count then token") {
    auto vocab = learners::bow_fit({"apple banana", "banana cherry"}, 10);
    REQUIRE(vocab.tokens.size() == 3);
    CHECK(vocab.tokens[0] == "banana");
    CHECK(vocab.tokens[1] == "apple");
    CHECK(vocab.tokens[2] == "cherry");
    CHECK(vocab.idf[0] == doctest::Approx(std::log(3.0 / 3.0) + 1.0).epsilon(1e-12));
    CHECK(vocab.idf[1] == doctest::Approx(std::log(3.0 / 2.0) + 1.0).epsilon(1e-12));
}

TEST_CASE("bow encoding is tf-idf with l2 norm") {
    auto vocab = learners::bow_fit({"apple banana", "banana cherry"}, 10);
    const auto row = learners::bow_encode_one(vocab, "apple apple banana");
    const double wa = 2.0 * (std::log(1.5) + 1.0);
    const double wb = 1.0;
    const double norm = std::sqrt(wa * wa + wb * wb);
    CHECK(row[vocab.index.at("apple")] == doctest::Approx(wa / norm).epsilon(1e-12));
    CHECK(row[vocab.index.at("banana")] == doctest::Approx(wb / norm).epsilon(1e-12));
    CHECK(row[vocab.index.at("cherry")] == 0.0);

    // disjoint texts encode to orthogonal rows
    const auto r1 = learners::bow_encode_one(vocab, "apple");
    const auto r2 = learners::bow_encode_one(vocab, "cherry");
    double dot = 0.0;
    for (std::size_t i = 0; i < r1.size(); ++i) dot += r1[i] * r2[i];
    CHECK(dot == 0.0);

    // no vocabulary hits encode to an all-zero row, not nan
    const auto zero = learners::bow_encode_one(vocab, "durian elderberry");
    for (double v : zero) CHECK(v == 0.0);
}

TEST_CASE("bow matrix carries labels and token column names") {
    auto vocab = learners::bow_fit({"apple banana", "banana cherry"}, 10);
    auto dm = learners::bow_matrix(vocab, {"apple", "cherry banana"}, {1, 0});
    REQUIRE(dm.rows.size() == 2);
    CHECK(dm.labels == std::vector<int>{1, 0});
    CHECK(dm.feature_names[0] == "tok_banana");
    CHECK(dm.feature_names[1] == "tok_apple");
    CHECK_THROWS_AS(learners::bow_fit({"", "   "}, 5), std::runtime_error);
}
