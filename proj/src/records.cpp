#include "cooc/records.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "cooc/error.hpp"
#include "cooc/util.hpp"

namespace cooc {

namespace {

ActionRecord record_from_json(const nlohmann::json& obj, const std::string& where) {
    if (!obj.is_object()) fail(ErrorKind::Parse, where + ": record must be a JSON object");
    for (const char* key : {"video_id", "action", "start_s", "end_s"})
        if (!obj.contains(key)) fail(ErrorKind::Parse, where + ": missing key '" + key + "'");
    if (!obj["video_id"].is_string() || !obj["action"].is_string())
        fail(ErrorKind::Parse, where + ": video_id and action must be strings");
    if (!obj["start_s"].is_number() || !obj["end_s"].is_number())
        fail(ErrorKind::Parse, where + ": start_s and end_s must be numbers");

    ActionRecord rec;
    rec.video_id = obj["video_id"].get<std::string>();
    rec.action = to_lower(trim(obj["action"].get<std::string>()));
    rec.start_s = obj["start_s"].get<double>();
    rec.end_s = obj["end_s"].get<double>();

    if (rec.video_id.empty()) fail(ErrorKind::Validation, where + ": empty video_id");
    if (tokenize(rec.action).empty())
        fail(ErrorKind::Validation, where + ": action has no tokens");
    if (!std::isfinite(rec.start_s) || !std::isfinite(rec.end_s))
        fail(ErrorKind::Validation, where + ": non-finite time");
    if (rec.start_s < 0.0)
        fail(ErrorKind::Validation, where + ": start_s must be >= 0");
    if (rec.end_s < rec.start_s)
        fail(ErrorKind::Validation, where + ": end_s < start_s");
    return rec;
}

} // namespace

std::vector<ActionRecord> parse_records(std::string_view stream, const std::string& source_name) {
    std::vector<ActionRecord> out;
    size_t line_no = 0;
    for (auto line : split(stream, '\n')) {
        ++line_no;
        if (is_skippable_line(line)) continue;
        std::string where = source_name + ":" + std::to_string(line_no);
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded()) fail(ErrorKind::Parse, where + ": invalid JSON");
        out.push_back(record_from_json(obj, where));
    }
    return out;
}

std::vector<ActionRecord> load_records(const std::filesystem::path& path) {
    return parse_records(read_file(path), path.filename().string());
}

std::vector<ActionRecord> filter_visual(const std::vector<ActionRecord>& records,
                                        const std::set<std::string>& allowlist) {
    if (allowlist.empty()) fail(ErrorKind::Config, "visual-verb allowlist is empty");
    std::vector<ActionRecord> out;
    for (const auto& rec : records) {
        std::string verb(first_token(rec.action));
        if (allowlist.count(verb)) out.push_back(rec);
    }
    return out;
}

std::vector<CoocPair> extract_cooccurrences(const std::vector<ActionRecord>& records,
                                            double window_s) {
    if (!(window_s > 0.0))
        fail(ErrorKind::Config, "co-occurrence window must be > 0 seconds");

    // per-video buckets, videos processed in sorted order for determinism
    std::map<std::string, std::vector<const ActionRecord*>> by_video;
    for (const auto& rec : records) by_video[rec.video_id].push_back(&rec);

    std::vector<CoocPair> out;
    for (auto& [video, recs] : by_video) {
        std::sort(recs.begin(), recs.end(), [](const ActionRecord* a, const ActionRecord* b) {
            if (a->start_s != b->start_s) return a->start_s < b->start_s;
            if (a->end_s != b->end_s) return a->end_s < b->end_s;
            return a->action < b->action;
        });
        for (size_t i = 0; i < recs.size(); ++i) {
            for (size_t j = i + 1; j < recs.size(); ++j) {
                // sorted by start, so the gap grows with j and we can stop early
                double gap = std::max(0.0, recs[j]->start_s - recs[i]->end_s);
                if (gap >= window_s) break;
                if (recs[i]->action == recs[j]->action) continue;
                CoocPair p;
                p.video_id = video;
                p.gap_s = gap;
                if (recs[i]->action < recs[j]->action) {
                    p.action_a = recs[i]->action;
                    p.action_b = recs[j]->action;
                } else {
                    p.action_a = recs[j]->action;
                    p.action_b = recs[i]->action;
                }
                out.push_back(std::move(p));
            }
        }
    }
    // canonical output order regardless of input order
    std::sort(out.begin(), out.end());
    return out;
}

std::string to_pairs_tsv(const std::vector<CoocPair>& pairs,
                         const std::vector<std::string>& header) {
    std::ostringstream out;
    for (const auto& h : header) out << "# " << h << "\n";
    for (const auto& p : pairs)
        out << p.video_id << "\t" << p.action_a << "\t" << p.action_b << "\t"
            << format_double(p.gap_s) << "\n";
    return out.str();
}

std::vector<CoocPair> parse_pairs_tsv(std::string_view content, const std::string& source_name) {
    std::vector<CoocPair> out;
    size_t line_no = 0;
    for (auto line : split(content, '\n')) {
        ++line_no;
        if (is_skippable_line(line)) continue;
        std::string where = source_name + ":" + std::to_string(line_no);
        auto fields = split(line, '\t');
        if (fields.size() != 4)
            fail(ErrorKind::Parse, where + ": expected 4 tab-separated fields");
        CoocPair p;
        p.video_id = std::string(trim(fields[0]));
        p.action_a = std::string(trim(fields[1]));
        p.action_b = std::string(trim(fields[2]));
        if (!parse_double(fields[3], p.gap_s) || p.gap_s < 0.0)
            fail(ErrorKind::Parse, where + ": bad gap value");
        if (p.action_a.empty() || p.action_b.empty() || p.video_id.empty())
            fail(ErrorKind::Parse, where + ": empty field");
        if (p.action_a >= p.action_b)
            fail(ErrorKind::Validation, where + ": pair must be lexicographically ordered");
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<CoocPair> load_pairs_tsv(const std::filesystem::path& path) {
    return parse_pairs_tsv(read_file(path), path.filename().string());
}

std::set<std::string> load_allowlist(const std::filesystem::path& path) {
    std::set<std::string> out;
    for (const auto& line : read_lines(path)) {
        if (is_skippable_line(line)) continue;
        out.insert(to_lower(trim(line)));
    }
    return out;
}

std::map<std::string, uint64_t> count_actions(const std::vector<ActionRecord>& records) {
    std::map<std::string, uint64_t> counts;
    for (const auto& rec : records) ++counts[rec.action];
    return counts;
}

} // namespace cooc
