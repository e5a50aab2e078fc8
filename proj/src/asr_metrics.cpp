#include "lowfreq/asr_metrics.hpp"

#include <algorithm>
#include <cctype>

#include "lowfreq/error.hpp"

namespace lowfreq {

namespace {

bool is_strippable(char c) {
    switch (c) {
        case '.': case ',': case '!': case '?': case ';': case ':': case '"':
            return true;
        default:
            return false;
    }
}

}  // namespace

TokenSeq tokenize(std::string_view text) {
    TokenSeq tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) continue;

        std::size_t lo = start, hi = i;
        while (lo < hi && is_strippable(text[lo])) ++lo;
        while (hi > lo && is_strippable(text[hi - 1])) --hi;
        if (lo == hi) continue;

        std::string token(text.substr(lo, hi - lo));
        for (char& c : token) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        tokens.push_back(std::move(token));
    }
    return tokens;
}

Alignment align(const TokenSeq& ref, const TokenSeq& hyp) {
    const std::size_t n = ref.size();
    const std::size_t m = hyp.size();
    // cost[i][j]: edit distance between ref[0..i) and hyp[0..j)
    std::vector<std::size_t> cost((n + 1) * (m + 1));
    auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return cost[i * (m + 1) + j]; };
    for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
    for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
            const std::size_t del = at(i - 1, j) + 1;
            const std::size_t ins = at(i, j - 1) + 1;
            at(i, j) = std::min({diag, del, ins});
        }
    }

    // backtrace, ties broken hit > substitution > deletion > insertion
    Alignment result;
    result.cost = at(n, m);
    std::vector<EditOp> reversed;
    std::size_t i = n, j = m;
    while (i > 0 || j > 0) {
        if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] && at(i, j) == at(i - 1, j - 1)) {
            reversed.push_back(EditOp::Hit);
            --i; --j;
        } else if (i > 0 && j > 0 && at(i, j) == at(i - 1, j - 1) + 1) {
            reversed.push_back(EditOp::Substitute);
            --i; --j;
        } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
            reversed.push_back(EditOp::Delete);
            --i;
        } else {
            reversed.push_back(EditOp::Insert);
            --j;
        }
    }
    result.ops.assign(reversed.rbegin(), reversed.rend());
    for (EditOp op : result.ops) {
        switch (op) {
            case EditOp::Hit: ++result.hits; break;
            case EditOp::Substitute: ++result.substitutions; break;
            case EditOp::Delete: ++result.deletions; break;
            case EditOp::Insert: ++result.insertions; break;
        }
    }
    return result;
}

WerBreakdown wer_utterance(const TokenSeq& ref, const TokenSeq& hyp) {
    if (ref.empty()) {
        raise(ErrorKind::EmptyReference, "reference transcript has no tokens");
    }
    const Alignment a = align(ref, hyp);
    WerBreakdown b;
    b.substitutions = a.substitutions;
    b.insertions = a.insertions;
    b.deletions = a.deletions;
    b.hits = a.hits;
    b.ref_tokens = ref.size();
    b.wer = static_cast<double>(a.substitutions + a.insertions + a.deletions) /
            static_cast<double>(ref.size());
    return b;
}

WerBreakdown wer_corpus(const std::vector<std::pair<TokenSeq, TokenSeq>>& pairs,
                        std::size_t* excluded_empty_refs) {
    std::vector<WerBreakdown> parts;
    std::size_t excluded = 0;
    for (const auto& [ref, hyp] : pairs) {
        if (ref.empty()) {
            ++excluded;
            continue;
        }
        parts.push_back(wer_utterance(ref, hyp));
    }
    if (excluded_empty_refs) *excluded_empty_refs = excluded;
    if (parts.empty()) raise(ErrorKind::NoValidPairs, "no pair has a non-empty reference");
    return pool_breakdowns(parts);
}

WerBreakdown pool_breakdowns(const std::vector<WerBreakdown>& parts) {
    WerBreakdown total;
    for (const WerBreakdown& p : parts) {
        total.substitutions += p.substitutions;
        total.insertions += p.insertions;
        total.deletions += p.deletions;
        total.hits += p.hits;
        total.ref_tokens += p.ref_tokens;
    }
    if (total.ref_tokens > 0) {
        total.wer = static_cast<double>(total.substitutions + total.insertions + total.deletions) /
                    static_cast<double>(total.ref_tokens);
    }
    return total;
}

}  // namespace lowfreq
