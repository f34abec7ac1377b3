#pragma once

#include "pairdiag/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

// =============================================================================
// File ingestion. Two CSV schemas:
//
//   score matrix:   item_id[,cluster],<model_1>,...,<model_k>
//                   one row per item, values decimal in [0,1]; the matrix is
//                   flagged binary iff every value is exactly 0 or 1.
//
//   counts fixture: pair,N,p_a,p_b,b,c[,rho]
//                   sufficient statistics per model pair; sigma is
//                   reconstructed from the counts identity psi - delta^2 and
//                   rho by inverting the difference-variance identity at the
//                   printed marginals (the optional rho column is kept for
//                   display only).
//
// Every diagnostic names the offending row/column.
// =============================================================================

namespace pairdiag::io {

enum class InputKind { Matrix, Counts };

struct CountsRow {
    std::string pair_name;
    long long n = 0;
    double p_a = 0.0, p_b = 0.0;
    long long b = 0, c = 0;
    std::optional<double> rho_printed;
};

InputKind detect_input_kind(const std::filesystem::path& path);

ScoreMatrix load_score_matrix(const std::filesystem::path& path);
ScoreMatrix parse_score_matrix(std::istream& in, const std::string& origin);

std::vector<CountsRow> load_counts_fixture(const std::filesystem::path& path);
std::vector<CountsRow> parse_counts_fixture(std::istream& in, const std::string& origin);

// PairedSummary reconstruction from a counts row (binary sufficient stats).
PairedSummary summary_from_counts(const CountsRow& row);

// Score-matrix CSV emission (used by the `gen` subcommand).
std::string matrix_to_csv(const ScoreMatrix& m);

} // namespace pairdiag::io
