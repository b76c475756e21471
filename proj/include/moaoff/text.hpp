#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace moaoff {

/// Raw counts behind the text score: L tokens, E entities, S sentences (>= 1).
struct TextFeatures {
    std::size_t token_count = 0;
    std::size_t entity_count = 0;
    std::size_t sentence_count = 1;
};

struct TextParams {
    int l0 = 512;          // token count that saturates the length term
    double gamma = 3.0;    // entities-per-sentence that saturates the density term
    double beta_l = 0.5;
    double beta_ner = 0.5;
};

void validate(const TextParams& p);

struct TextComplexity {
    double c_l = 0.0;
    double c_ner = 0.0;
    double total = 0.0;
};

/// Whitespace token with its sentence position. A token is sentence-initial
/// if it is the first token of the text or the first token after a sentence
/// delimiter ('.', '!', '?').
struct Token {
    std::string text;
    bool sentence_initial = false;
};

/// Splits on maximal runs of Unicode whitespace (UTF-8 decoded; invalid
/// bytes are treated as ordinary characters).
std::vector<std::string> tokenize(std::string_view text);

/// Number of maximal non-empty segments between runs of '.', '!', '?'.
/// Never less than 1.
std::size_t split_sentences(std::string_view text);

std::vector<Token> annotate_tokens(std::string_view text);

/// A token counts as an entity if it contains a decimal digit, or starts
/// with an ASCII uppercase letter without being sentence-initial.
std::size_t count_entities(std::span<const Token> tokens);

TextFeatures text_features(std::string_view text);

TextComplexity text_complexity(std::string_view text, const TextParams& params);
TextComplexity text_complexity(const TextFeatures& features, const TextParams& params);

} // namespace moaoff
