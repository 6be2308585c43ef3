#include "qinv/report.hpp"

#include <json.hpp>

#ifndef QINV_VERSION
#define QINV_VERSION "0.0.0"
#endif

namespace qinv {

std::string_view tool_version() { return QINV_VERSION; }

std::string ReportDocument::dump() const {
    nlohmann::ordered_json doc;
    doc["tool"] = "qinv";
    doc["version"] = std::string(tool_version());
    doc["command"] = command;
    doc["input_digest"] = input_digest;
    doc["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
    for (const auto& [key, value] : text_fields) doc[key] = value;
    for (const auto& [key, value] : number_fields) doc[key] = value;
    for (const auto& [key, value] : integer_fields) doc[key] = value;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        nlohmann::ordered_json item;
        item["index"] = e.index;
        item["value"] = e.value;
        item["degree"] = e.degree;
        item["method"] = std::string(method_name(e.method));
        if (e.std_error) item["std_error"] = *e.std_error;
        if (!e.note.empty()) item["note"] = e.note;
        list.push_back(std::move(item));
    }
    doc["entries"] = std::move(list);
    if (!criteria.empty()) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& c : criteria) {
            nlohmann::ordered_json row;
            row["id"] = c.id;
            row["name"] = c.name;
            row["passed"] = c.passed;
            row["measured"] = c.measured;
            row["threshold"] = c.threshold;
            row["detail"] = c.detail;
            rows.push_back(std::move(row));
        }
        doc["criteria"] = std::move(rows);
    }
    if (verdict) doc["verdict"] = *verdict;
    return doc.dump(2);
}

}  // namespace qinv
