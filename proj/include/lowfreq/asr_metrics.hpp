#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lowfreq {

using TokenSeq = std::vector<std::string>;

enum class EditOp { Hit, Substitute, Delete, Insert };

struct Alignment {
    std::vector<EditOp> ops;
    std::size_t cost = 0;
    std::size_t hits = 0;
    std::size_t substitutions = 0;
    std::size_t deletions = 0;
    std::size_t insertions = 0;
};

struct WerBreakdown {
    std::size_t substitutions = 0;
    std::size_t insertions = 0;
    std::size_t deletions = 0;
    std::size_t hits = 0;
    std::size_t ref_tokens = 0;
    double wer = 0.0;  // (S+I+D)/ref_tokens, may exceed 1.0
};

/// Uppercases, splits on whitespace runs, strips leading/trailing
/// .,!?;:" per token. Apostrophes are kept. Tokens emptied by stripping
/// are dropped.
TokenSeq tokenize(std::string_view text);

/// Levenshtein alignment with unit S/I/D costs. Backtrace ties resolve
/// hit > substitution > deletion > insertion so the op sequence is
/// deterministic, not just the cost.
Alignment align(const TokenSeq& ref, const TokenSeq& hyp);

/// Throws EmptyReference when ref is empty (undefined denominator).
WerBreakdown wer_utterance(const TokenSeq& ref, const TokenSeq& hyp);

/// Pooled corpus totals: sum of errors over sum of reference tokens (not
/// the mean of per-utterance WERs). Pairs with empty references are
/// skipped and counted into *excluded_empty_refs when given. Throws
/// NoValidPairs when nothing remains.
WerBreakdown wer_corpus(const std::vector<std::pair<TokenSeq, TokenSeq>>& pairs,
                        std::size_t* excluded_empty_refs = nullptr);

/// Pooled totals from already-scored utterances.
WerBreakdown pool_breakdowns(const std::vector<WerBreakdown>& parts);

}  // namespace lowfreq
