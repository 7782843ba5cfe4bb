#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cooc {

/// One narrated action occurrence.
struct ActionRecord {
    std::string video_id;
    std::string action;  // non-empty, lowercase, >= 1 token
    double start_s = 0.0;
    double end_s = 0.0;
};

/// A co-occurring action pair within one video, canonically oriented
/// (action_a < action_b) with the temporal gap between the two spans.
struct CoocPair {
    std::string video_id;
    std::string action_a;
    std::string action_b;
    double gap_s = 0.0;

    friend bool operator==(const CoocPair&, const CoocPair&) = default;
    friend auto operator<=>(const CoocPair&, const CoocPair&) = default;
};

/// Parses line-delimited JSON records ({video_id, action, start_s, end_s}).
/// Actions are lower-cased and whitespace-trimmed. Malformed lines and
/// invariant violations (end_s < start_s, negative times, empty action)
/// raise Error with the 1-based line number.
std::vector<ActionRecord> parse_records(std::string_view stream,
                                        const std::string& source_name = "records");
std::vector<ActionRecord> load_records(const std::filesystem::path& path);

/// Keeps records whose verb (first token of the action) is in the allowlist.
/// Stable order. Empty allowlist is a configuration error.
std::vector<ActionRecord> filter_visual(const std::vector<ActionRecord>& records,
                                        const std::set<std::string>& allowlist);

/// Emits one CoocPair per unordered record pair in the same video whose span
/// gap max(0, later.start - earlier.end) is < window_s. Same-label pairs are
/// excluded; repeated occurrences yield repeated pairs. Input order does not
/// matter. window_s <= 0 is a configuration error.
std::vector<CoocPair> extract_cooccurrences(const std::vector<ActionRecord>& records,
                                            double window_s);

/// `video_id \t action_a \t action_b \t gap_s` per pair.
std::string to_pairs_tsv(const std::vector<CoocPair>& pairs,
                         const std::vector<std::string>& header = {});
std::vector<CoocPair> parse_pairs_tsv(std::string_view content,
                                      const std::string& source_name = "pairs");
std::vector<CoocPair> load_pairs_tsv(const std::filesystem::path& path);

/// One allowlisted verb per line; `#` comments allowed.
std::set<std::string> load_allowlist(const std::filesystem::path& path);

/// Occurrence count per action label.
std::map<std::string, uint64_t> count_actions(const std::vector<ActionRecord>& records);

} // namespace cooc
