#include "moaoff/text.hpp"

#include <algorithm>
#include <cmath>

#include "moaoff/error.hpp"

namespace moaoff {

void validate(const TextParams& p) {
    if (p.l0 < 1) {
        throw DomainError("text params: l0 must be at least 1");
    }
    if (!(p.gamma > 0)) {
        throw DomainError("text params: gamma must be positive");
    }
    if (p.beta_l < 0 || p.beta_ner < 0 || std::abs(p.beta_l + p.beta_ner - 1.0) > 1e-9) {
        throw DomainError("text params: beta_l and beta_ner must be non-negative and sum to 1");
    }
}

namespace {

constexpr bool is_sentence_delim(char c) {
    return c == '.' || c == '!' || c == '?';
}

bool is_unicode_space(char32_t cp) {
    switch (cp) {
        case 0x0009: case 0x000A: case 0x000B: case 0x000C: case 0x000D:
        case 0x0020: case 0x0085: case 0x00A0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

// Decodes one UTF-8 code point at `i`, advancing `i`. Malformed bytes are
// returned as-is (one byte) so arbitrary input never throws.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
        ++i;
        return b0;
    } else if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return b0;
    }
    if (i + len > s.size()) {
        ++i;
        return b0;
    }
    for (std::size_t k = 1; k < len; ++k) {
        const auto bk = static_cast<unsigned char>(s[i + k]);
        if ((bk & 0xC0) != 0x80) {
            ++i;
            return b0;
        }
        cp = (cp << 6) | (bk & 0x3F);
    }
    i += len;
    return cp;
}

} // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    std::size_t token_start = 0;
    bool in_token = false;
    while (i < text.size()) {
        const std::size_t at = i;
        const char32_t cp = decode_utf8(text, i);
        if (is_unicode_space(cp)) {
            if (in_token) {
                tokens.emplace_back(text.substr(token_start, at - token_start));
                in_token = false;
            }
        } else if (!in_token) {
            token_start = at;
            in_token = true;
        }
    }
    if (in_token) {
        tokens.emplace_back(text.substr(token_start));
    }
    return tokens;
}

std::size_t split_sentences(std::string_view text) {
    std::size_t count = 0;
    bool in_segment = false;
    for (char c : text) {
        if (is_sentence_delim(c)) {
            in_segment = false;
        } else if (!in_segment) {
            in_segment = true;
            ++count;
        }
    }
    return std::max<std::size_t>(1, count);
}

std::vector<Token> annotate_tokens(std::string_view text) {
    std::vector<Token> tokens;
    bool next_is_initial = true;
    for (auto& word : tokenize(text)) {
        Token tok;
        tok.text = std::move(word);
        tok.sentence_initial = next_is_initial;
        // A delimiter anywhere in the token ends its sentence, so the next
        // token starts a new one.
        next_is_initial = std::any_of(tok.text.begin(), tok.text.end(), is_sentence_delim);
        tokens.push_back(std::move(tok));
    }
    return tokens;
}

std::size_t count_entities(std::span<const Token> tokens) {
    std::size_t count = 0;
    for (const Token& tok : tokens) {
        const bool has_digit = std::any_of(tok.text.begin(), tok.text.end(),
                                           [](char c) { return c >= '0' && c <= '9'; });
        const bool capitalized = !tok.text.empty() && tok.text.front() >= 'A' && tok.text.front() <= 'Z';
        if (has_digit || (capitalized && !tok.sentence_initial)) {
            ++count;
        }
    }
    return count;
}

TextFeatures text_features(std::string_view text) {
    TextFeatures f;
    const auto tokens = annotate_tokens(text);
    f.token_count = tokens.size();
    f.entity_count = count_entities(tokens);
    f.sentence_count = split_sentences(text);
    return f;
}

TextComplexity text_complexity(const TextFeatures& features, const TextParams& params) {
    validate(params);
    TextComplexity out;
    out.c_l = std::min(1.0, static_cast<double>(features.token_count) / static_cast<double>(params.l0));
    const double entities_per_sentence =
        static_cast<double>(features.entity_count) / static_cast<double>(features.sentence_count);
    out.c_ner = std::min(1.0, entities_per_sentence / params.gamma);
    out.total = params.beta_l * out.c_l + params.beta_ner * out.c_ner;
    return out;
}

TextComplexity text_complexity(std::string_view text, const TextParams& params) {
    return text_complexity(text_features(text), params);
}

} // namespace moaoff
