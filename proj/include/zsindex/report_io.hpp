#pragma once

#include <string>

#include "zsindex/audit.hpp"
#include "zsindex/zerosum.hpp"

namespace zsindex {

enum class OutputFormat { Jsonl, Csv };

OutputFormat parse_output_format(const std::string& s);

// One record per line; JSONL schemas:
//   verify: {"n":int,"checked":int,"ok":bool,"witness":null|{"seq":[...],"index":int}}
//   audit:  {"name":str,"inputs":{...},"lhs":float,"rhs":float,"margin":float,"pass":bool}
std::string render_verify(const VerifyReport& r, OutputFormat fmt);
std::string render_audit(const AuditReport& r, OutputFormat fmt);
std::string render_constant(const ConstantEntry& e, OutputFormat fmt);

}  // namespace zsindex
