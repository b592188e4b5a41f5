#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "persona/common.hpp"
#include "persona/discretize.hpp"
#include "persona/emotion.hpp"
#include "persona/features.hpp"
#include "persona/inventory.hpp"
#include "persona/record.hpp"

namespace persona {

/// Write via temp file + rename so partially-written outputs never land
/// under the final name.
inline void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(out.good(), "cannot open for writing: " + tmp.string());
        out << content;
        out.flush();
        require(out.good(), "write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::string text = read_text(path);
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string csv_field(const std::string& s, const std::string& context) {
    require(s.find(',') == std::string::npos && s.find('\n') == std::string::npos,
            context + ": value may not contain commas or newlines: '" + s + "'");
    return s;
}

// --- inventories -----------------------------------------------------------

/// CSV: participant_id,a1..a44 with header. JSONL: {participant_id, answers}.
inline std::vector<InventoryResponse> load_inventories(const std::filesystem::path& path) {
    std::vector<InventoryResponse> out;
    if (path.extension() == ".jsonl") {
        auto lines = read_lines(path);
        for (size_t i = 0; i < lines.size(); ++i) {
            if (lines[i].empty()) continue;
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(lines[i]);
            } catch (const nlohmann::json::exception& e) {
                detail::fail(path.string() + ":" + std::to_string(i + 1) + ": bad JSON: " + e.what());
            }
            InventoryResponse r;
            r.participant_id = j.at("participant_id").get<std::string>();
            r.answers = j.at("answers").get<std::vector<int>>();
            out.push_back(std::move(r));
        }
        return out;
    }
    auto lines = read_lines(path);
    require(!lines.empty(), path.string() + ": empty inventory file");
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto fields = split_csv(lines[i]);
        std::string where = path.string() + ":" + std::to_string(i + 1);
        require(fields.size() == 1 + kInventoryItems,
                where + ": expected 45 fields, got " + std::to_string(fields.size()));
        InventoryResponse r;
        r.participant_id = fields[0];
        for (int k = 0; k < kInventoryItems; ++k)
            r.answers.push_back(static_cast<int>(parse_int(fields[static_cast<size_t>(k) + 1], where)));
        out.push_back(std::move(r));
    }
    return out;
}

inline std::string inventories_to_csv(const std::vector<InventoryResponse>& responses) {
    std::string out = "participant_id";
    for (int i = 1; i <= kInventoryItems; ++i) out += ",a" + std::to_string(i);
    out += "\n";
    for (const auto& r : responses) {
        out += csv_field(r.participant_id, "participant_id");
        for (int a : r.answers) out += "," + std::to_string(a);
        out += "\n";
    }
    return out;
}

// --- scores ----------------------------------------------------------------

struct ScoreTable {
    std::vector<std::string> ids;
    std::vector<PersonalityScore> scores;
};

inline std::string scores_to_csv(const ScoreTable& table) {
    std::string out = "participant_id,E,A,C,N,O\n";
    for (size_t i = 0; i < table.ids.size(); ++i) {
        out += csv_field(table.ids[i], "participant_id");
        for (Dimension d : all_dimensions()) out += "," + format_double(table.scores[i][d]);
        out += "\n";
    }
    return out;
}

inline ScoreTable scores_from_csv_text(const std::string& text, const std::string& origin) {
    ScoreTable table;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1) {
            require(line == "participant_id,E,A,C,N,O",
                    origin + ": unexpected scores header: '" + line + "'");
            continue;
        }
        auto fields = split_csv(line);
        std::string where = origin + ":" + std::to_string(lineno);
        require(fields.size() == 6, where + ": expected 6 fields");
        table.ids.push_back(fields[0]);
        PersonalityScore s;
        for (int d = 0; d < kDimensionCount; ++d)
            s.values[static_cast<size_t>(d)] = parse_double(fields[static_cast<size_t>(d) + 1], where);
        table.scores.push_back(s);
    }
    require(!table.ids.empty(), origin + ": no score rows");
    return table;
}

inline ScoreTable load_scores(const std::filesystem::path& path) {
    return scores_from_csv_text(read_text(path), path.string());
}

// --- labels ----------------------------------------------------------------

struct LabelTable {
    std::vector<std::string> ids;
    std::vector<std::array<ClassLabel, kDimensionCount>> labels;
};

inline std::string labels_to_csv(const LabelTable& table) {
    std::string out = "participant_id,E,A,C,N,O\n";
    for (size_t i = 0; i < table.ids.size(); ++i) {
        out += csv_field(table.ids[i], "participant_id");
        for (int d = 0; d < kDimensionCount; ++d)
            out += std::string(",") + class_label_name(table.labels[i][static_cast<size_t>(d)]);
        out += "\n";
    }
    return out;
}

inline LabelTable load_labels(const std::filesystem::path& path) {
    LabelTable table;
    auto lines = read_lines(path);
    require(!lines.empty(), path.string() + ": empty labels file");
    require(lines[0] == "participant_id,E,A,C,N,O",
            path.string() + ": unexpected labels header: '" + lines[0] + "'");
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto fields = split_csv(lines[i]);
        std::string where = path.string() + ":" + std::to_string(i + 1);
        require(fields.size() == 6, where + ": expected 6 fields");
        table.ids.push_back(fields[0]);
        std::array<ClassLabel, kDimensionCount> row{};
        for (int d = 0; d < kDimensionCount; ++d) {
            try {
                row[static_cast<size_t>(d)] = class_label_from_name(fields[static_cast<size_t>(d) + 1]);
            } catch (const ValidationError& e) {
                detail::fail(where + ": " + e.what());
            }
        }
        table.labels.push_back(row);
    }
    require(!table.ids.empty(), path.string() + ": no label rows");
    return table;
}

// --- feature tables ---------------------------------------------------------

struct FeatureTable {
    std::vector<std::string> ids;
    std::vector<FeatureVector> rows;
};

inline std::string features_to_csv(const FeatureTable& table) {
    const auto& schema = feature_schema();
    std::string out = "user_id";
    for (const auto& f : schema) out += "," + f.name;
    out += "\n";
    for (size_t i = 0; i < table.ids.size(); ++i) {
        out += csv_field(table.ids[i], "user_id");
        for (size_t c = 0; c < schema.size(); ++c) {
            const Value& v = table.rows[i][c];
            out += ",";
            out += is_numeric(v) ? format_double(num(v)) : csv_field(cat(v), schema[c].name);
        }
        out += "\n";
    }
    return out;
}

inline nlohmann::ordered_json feature_schema_json() {
    nlohmann::ordered_json j;
    j["format"] = "persona-features";
    j["version"] = kFeatureSchemaVersion;
    nlohmann::ordered_json cols = nlohmann::ordered_json::array();
    for (const auto& f : feature_schema()) {
        nlohmann::ordered_json c;
        c["name"] = f.name;
        c["group"] = feature_group_name(f.group);
        c["kind"] = feature_kind_name(f.kind);
        c["unit"] = f.unit;
        c["definition"] = f.definition;
        c["provenance"] = f.provenance;
        c["aliases"] = f.aliases;
        cols.push_back(c);
    }
    j["features"] = cols;
    return j;
}

inline FeatureTable load_features(const std::filesystem::path& path) {
    const auto& schema = feature_schema();
    FeatureTable table;
    auto lines = read_lines(path);
    require(!lines.empty(), path.string() + ": empty feature file");
    std::string expected_header = "user_id";
    for (const auto& f : schema) expected_header += "," + f.name;
    require(lines[0] == expected_header,
            path.string() + ": feature header does not match schema version " +
                std::to_string(kFeatureSchemaVersion));
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto fields = split_csv(lines[i]);
        std::string where = path.string() + ":" + std::to_string(i + 1);
        require(fields.size() == schema.size() + 1,
                where + ": expected " + std::to_string(schema.size() + 1) + " fields, got " +
                    std::to_string(fields.size()));
        table.ids.push_back(fields[0]);
        FeatureVector row;
        for (size_t c = 0; c < schema.size(); ++c) {
            const std::string& raw = fields[c + 1];
            if (schema[c].kind == FeatureKind::Numeric)
                row.emplace_back(parse_double(raw, where + " (" + schema[c].name + ")"));
            else
                row.emplace_back(raw);
        }
        table.rows.push_back(std::move(row));
    }
    require(!table.ids.empty(), path.string() + ": no feature rows");
    return table;
}

// --- user records (JSONL) ----------------------------------------------------

inline std::vector<UserRecord> load_records(const std::filesystem::path& path) {
    std::vector<UserRecord> out;
    auto lines = read_lines(path);
    for (size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        std::string where = path.string() + ":" + std::to_string(i + 1);
        try {
            out.push_back(user_record_from_json(nlohmann::json::parse(lines[i])));
        } catch (const nlohmann::json::exception& e) {
            detail::fail(where + ": bad record: " + e.what());
        }
    }
    require(!out.empty(), path.string() + ": no records");
    return out;
}

inline std::string records_to_jsonl(const std::vector<UserRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        out += user_record_to_json(r).dump();
        out += "\n";
    }
    return out;
}

// --- emotion corpus / lexicon -------------------------------------------------

inline std::vector<LabeledText> load_emotion_corpus(const std::filesystem::path& path) {
    std::vector<LabeledText> out;
    auto lines = read_lines(path);
    for (size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        std::string where = path.string() + ":" + std::to_string(i + 1);
        try {
            auto j = nlohmann::json::parse(lines[i]);
            out.push_back({j.at("text").get<std::string>(),
                           emotion_from_name(j.at("label").get<std::string>())});
        } catch (const nlohmann::json::exception& e) {
            detail::fail(where + ": bad corpus line: " + e.what());
        } catch (const ValidationError& e) {
            detail::fail(where + ": " + e.what());
        }
    }
    require(!out.empty(), path.string() + ": empty corpus");
    return out;
}

inline std::string emotion_corpus_to_jsonl(const std::vector<LabeledText>& corpus) {
    std::string out;
    for (const auto& doc : corpus) {
        nlohmann::ordered_json j;
        j["text"] = doc.text;
        j["label"] = emotion_name(doc.label);
        out += j.dump();
        out += "\n";
    }
    return out;
}

/// One token per line; blank lines and '#' comments skipped.
inline std::set<std::string> load_lexicon(const std::filesystem::path& path) {
    std::set<std::string> out;
    for (const auto& line : read_lines(path)) {
        if (line.empty() || line[0] == '#') continue;
        out.insert(line);
    }
    require(!out.empty(), path.string() + ": empty lexicon");
    return out;
}

inline void write_json_atomic(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

} // namespace persona
