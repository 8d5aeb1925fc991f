#pragma once

#include <cstdint>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ripple/dense.hpp"

namespace ripple {

struct BadMatrixFile : std::runtime_error {
    explicit BadMatrixFile(const std::string& what) : std::runtime_error(what) {}
};

/// Drops lines whose first non-space character is '#' so the remainder can
/// be tokenized by whitespace alone.
inline std::string strip_comment_lines(std::istream& in) {
    std::string out, line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first != std::string::npos && line[first] == '#') continue;
        out += line;
        out += '\n';
    }
    return out;
}

/// Format: optional comment lines, a "rows cols" line, then rows*cols
/// whitespace-separated values; line breaks inside the data are free-form.
template <typename Scalar>
Dense<Scalar> load_matrix(std::istream& in) {
    std::istringstream body(strip_comment_lines(in));
    long long rows = 0, cols = 0;
    if (!(body >> rows >> cols)) throw BadMatrixFile("expected a \"rows cols\" header line");
    if (rows < 1 || cols < 1 || rows > 100000 || cols > 100000)
        throw BadMatrixFile("matrix dimensions out of range");
    Dense<Scalar> a(static_cast<int>(rows), static_cast<int>(cols));
    for (long long i = 0; i < rows; ++i)
        for (long long j = 0; j < cols; ++j) {
            Scalar v;
            if (!(body >> v))
                throw BadMatrixFile("matrix data ended early at row " + std::to_string(i + 1));
            a(static_cast<int>(i), static_cast<int>(j)) = v;
        }
    std::string extra;
    if (body >> extra) throw BadMatrixFile("unexpected trailing token \"" + extra + "\"");
    return a;
}

/// Whole-stream list of nonnegative integers, same comment handling.
inline std::vector<std::uint64_t> load_values(std::istream& in) {
    std::istringstream body(strip_comment_lines(in));
    std::vector<std::uint64_t> values;
    std::string token;
    while (body >> token) {
        try {
            std::size_t used = 0;
            if (token.front() == '-') throw std::invalid_argument(token);
            const std::uint64_t v = std::stoull(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            values.push_back(v);
        } catch (const std::exception&) {
            throw BadMatrixFile("not a nonnegative integer: \"" + token + "\"");
        }
    }
    return values;
}

}  // namespace ripple
