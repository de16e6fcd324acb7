// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0
//
// Output rendering for case tables and verification reports.  All numeric
// values in JSON output are rendered as strings so consumers never lose
// precision.

#ifndef K3CLS_RENDER_HPP
#define K3CLS_RENDER_HPP

#include <optional>
#include <string>
#include <vector>

#include "k3cls/classify.hpp"

namespace k3cls {

enum class OutputFormat { text, csv, md, json };

// "text" | "csv" | "md" | "json", or nothing for anything else.
std::optional<OutputFormat> parse_format(const std::string& name);

// Case table.  CSV columns: group_no,label,n,l2,glue,tx_11,tx_12,tx_22.
std::string render_cases(const std::vector<CaseRecord>& records, OutputFormat format);

// Verification report; the leading line of the text form is
// "<matched>/<checked> cases, <matched>/<checked> table rows".
// csv/md fall back to the text form.
std::string render_verification(const VerificationReport& report, OutputFormat format);

}  // namespace k3cls

#endif  // K3CLS_RENDER_HPP
