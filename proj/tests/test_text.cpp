#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "moaoff/error.hpp"
#include "moaoff/text.hpp"

using namespace moaoff;

namespace {

std::string repeat_token(const std::string& tok, int n) {
    std::string out;
    for (int i = 0; i < n; ++i) {
        if (i) {
            out += ' ';
        }
        out += tok;
    }
    return out;
}

} // namespace

TEST_CASE("tokenizer splits on whitespace runs") {
    CHECK(tokenize("hello world") == std::vector<std::string>{"hello", "world"});
    CHECK(tokenize("") == std::vector<std::string>{});
    CHECK(tokenize("  a\t b \n") == std::vector<std::string>{"a", "b"});
    CHECK(tokenize("   \t\n  ") == std::vector<std::string>{});
    CHECK(tokenize("one") == std::vector<std::string>{"one"});
}

TEST_CASE("tokenizer treats unicode whitespace as separators") {
    // U+00A0 no-break space and U+2003 em space between words.
    CHECK(tokenize("a\xC2\xA0") == std::vector<std::string>{"a"});
    CHECK(tokenize("a\xC2\xA0стол") == std::vector<std::string>{"a", "стол"});
    CHECK(tokenize("x\xE2\x80\x83y") == std::vector<std::string>{"x", "y"});
}

TEST_CASE("tokenizer keeps invalid utf-8 bytes inside tokens") {
    const std::string raw = std::string("a\xFF") + "b c";
    const auto toks = tokenize(raw);
    REQUIRE(toks.size() == 2);
    CHECK(toks[0] == "a\xFF"
                     "b");
    CHECK(toks[1] == "c");
}

TEST_CASE("sentence segmentation counts non-empty runs between terminators") {
    CHECK(split_sentences("One. Two! Three?") == 3);
    CHECK(split_sentences("no terminator") == 1);
    CHECK(split_sentences("") == 1);
    CHECK(split_sentences("...") == 1);
    CHECK(split_sentences("a.b") == 2);
    CHECK(split_sentences("a?! b") == 2);
    CHECK(split_sentences(". leading") == 1);
}

TEST_CASE("entity counting examples") {
    CHECK(text_features("The cat sat").entity_count == 0);
    CHECK(text_features("I met Alice and Bob in 2024").entity_count == 3);
    CHECK(text_features("").entity_count == 0);
}

TEST_CASE("entity rules: digits anywhere, capitals only when not sentence-initial") {
    // "The" opens the text and "A" opens the second sentence; neither counts.
    // "Towers." carries a capital mid-sentence, "3" is a digit token.
    CHECK(text_features("The 3 Towers. A tale.").entity_count == 2);
    CHECK(text_features("version v2 shipped").entity_count == 1);
    CHECK(text_features("lower case only words").entity_count == 0);
    CHECK(text_features("Start End.").entity_count == 1);
}

TEST_CASE("sentence-initial flags follow terminators") {
    const auto toks = annotate_tokens("One two. Three");
    REQUIRE(toks.size() == 3);
    CHECK(toks[0].sentence_initial);
    CHECK(!toks[1].sentence_initial);
    CHECK(toks[2].sentence_initial);
}

TEST_CASE("feature extraction bundles all three counts") {
    const TextFeatures f = text_features("I met Alice and Bob in 2024");
    CHECK(f.token_count == 7);
    CHECK(f.entity_count == 3);
    CHECK(f.sentence_count == 1);
    const TextFeatures empty = text_features("");
    CHECK(empty.token_count == 0);
    CHECK(empty.sentence_count == 1);
}

TEST_CASE("empty text scores zero") {
    const TextComplexity c = text_complexity("", TextParams{});
    CHECK(c.c_l == 0.0);
    CHECK(c.c_ner == 0.0);
    CHECK(c.total == 0.0);
}

TEST_CASE("length term at 256 entity-free tokens") {
    const TextComplexity c = text_complexity(repeat_token("word", 256), TextParams{});
    CHECK(c.c_l == 0.5);
    CHECK(c.c_ner == 0.0);
    CHECK(c.total == 0.25);
}

TEST_CASE("both terms saturate at 2048 tokens with 6 entities per sentence") {
    TextFeatures f;
    f.token_count = 2048;
    f.sentence_count = 4;
    f.entity_count = 24;
    const TextComplexity c = text_complexity(f, TextParams{});
    CHECK(c.c_l == 1.0);
    CHECK(c.c_ner == 1.0);
    CHECK(c.total == 1.0);
}

TEST_CASE("length term is non-decreasing in token count") {
    double prev = -1.0;
    for (std::size_t n : {0u, 1u, 16u, 128u, 512u, 513u, 4096u}) {
        TextFeatures f;
        f.token_count = n;
        const double v = text_complexity(f, TextParams{}).c_l;
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("density term is non-decreasing in entity count at fixed sentences") {
    double prev = -1.0;
    for (std::size_t e = 0; e <= 12; ++e) {
        TextFeatures f;
        f.token_count = 10;
        f.sentence_count = 2;
        f.entity_count = e;
        const double v = text_complexity(f, TextParams{}).c_ner;
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("total is the beta-weighted sum and stays in [0,1]") {
    TextParams p;
    p.beta_l = 0.7;
    p.beta_ner = 0.3;
    const TextComplexity c = text_complexity("Alice saw 2 cats. Bob waved.", p);
    CHECK(c.total == doctest::Approx(0.7 * c.c_l + 0.3 * c.c_ner).epsilon(1e-12));
    CHECK(c.total >= 0.0);
    CHECK(c.total <= 1.0);
}

TEST_CASE("parameter validation") {
    TextParams p;
    p.l0 = 0;
    CHECK_THROWS_AS(validate(p), DomainError);
    p = TextParams{};
    p.gamma = 0.0;
    CHECK_THROWS_AS(validate(p), DomainError);
    p = TextParams{};
    p.beta_l = 0.6;
    p.beta_ner = 0.6;
    CHECK_THROWS_AS(validate(p), DomainError);
    p = TextParams{};
    p.beta_ner = -0.1;
    p.beta_l = 1.1;
    CHECK_THROWS_AS(validate(p), DomainError);
}

TEST_CASE("scoring is deterministic") {
    const std::string sample = "Dr Smith measured 42 samples. Results follow.";
    const TextComplexity a = text_complexity(sample, TextParams{});
    const TextComplexity b = text_complexity(sample, TextParams{});
    CHECK(a.c_l == b.c_l);
    CHECK(a.c_ner == b.c_ner);
    CHECK(a.total == b.total);
}
