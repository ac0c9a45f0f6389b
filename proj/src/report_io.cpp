#include "zsindex/report_io.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace zsindex {

using nlohmann::json;

OutputFormat parse_output_format(const std::string& s) {
    if (s == "jsonl") return OutputFormat::Jsonl;
    if (s == "csv") return OutputFormat::Csv;
    throw std::invalid_argument("output format must be jsonl or csv");
}

std::string render_verify(const VerifyReport& r, OutputFormat fmt) {
    if (fmt == OutputFormat::Jsonl) {
        json j;
        j["n"] = r.n;
        j["checked"] = r.sequences_checked;
        j["ok"] = r.all_index_one;
        if (r.witness)
            j["witness"] = {{"seq", r.witness->seq}, {"index", r.witness->index}};
        else
            j["witness"] = nullptr;
        return j.dump();
    }
    std::ostringstream os;
    os << r.n << ',' << r.sequences_checked << ',' << (r.all_index_one ? "true" : "false") << ',';
    if (r.witness) {
        for (std::size_t i = 0; i < r.witness->seq.size(); ++i)
            os << (i ? "|" : "") << r.witness->seq[i];
        os << ',' << r.witness->index;
    } else {
        os << ',';
    }
    return os.str();
}

std::string render_audit(const AuditReport& r, OutputFormat fmt) {
    if (fmt == OutputFormat::Jsonl) {
        json j;
        j["name"] = r.name;
        json in = json::object();
        for (const auto& [k, v] : r.inputs) in[k] = v;
        j["inputs"] = in;
        j["lhs"] = r.lhs;
        j["rhs"] = r.rhs;
        j["margin"] = r.margin;
        j["pass"] = r.pass;
        if (!r.notes.empty()) j["notes"] = r.notes;
        return j.dump();
    }
    std::ostringstream os;
    os << r.name << ',';
    for (std::size_t i = 0; i < r.inputs.size(); ++i)
        os << (i ? "|" : "") << r.inputs[i].first << '=' << r.inputs[i].second;
    os << ',' << r.lhs << ',' << r.rhs << ',' << r.margin << ','
       << (r.pass ? "true" : "false");
    return os.str();
}

std::string render_constant(const ConstantEntry& e, OutputFormat fmt) {
    if (fmt == OutputFormat::Jsonl) {
        json j;
        j["symbol"] = e.symbol;
        j["value"] = e.value;
        j["claim"] = e.claim;
        j["satisfied"] = e.satisfied;
        return j.dump();
    }
    std::ostringstream os;
    os.precision(17);
    os << e.symbol << ',' << e.value << ",\"" << e.claim << "\","
       << (e.satisfied ? "true" : "false");
    return os.str();
}

}  // namespace zsindex
