/*
 * Copyright 2026 The polcorr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "matrix_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace polcorr::cli {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view text, std::string_view whole) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("malformed complex number '" + std::string(whole) + "'");
    return value;
}

}  // namespace

Complex parse_complex(std::string_view text) {
    const std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty complex number");
    if (s.back() != 'i') return {parse_real(s, s), 0.0};

    const std::string_view body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not leading and not an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto imag_part = [&](std::string_view t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t, s);
    };
    if (split == std::string_view::npos) return {0.0, imag_part(body)};
    return {parse_real(body.substr(0, split), s), imag_part(body.substr(split))};
}

CoherenceMatrix read_matrix(std::istream& in) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (!trim(line).empty()) lines.emplace_back(trim(line));
    }
    if (lines.empty()) throw std::invalid_argument("matrix file is empty");

    std::size_t k = 0;
    {
        const std::string_view head = lines.front();
        const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), k);
        if (ec != std::errc{} || ptr != head.data() + head.size())
            throw std::invalid_argument("matrix file must start with the order k");
    }
    if (lines.size() != k + 1)
        throw std::invalid_argument("matrix file must contain exactly k rows after the header");

    ComplexMatrix m(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::stringstream row(lines[i + 1]);
        std::size_t j = 0;
        for (std::string cell; std::getline(row, cell, ',');) {
            if (j >= k) throw std::invalid_argument("matrix row has more than k entries");
            m(i, j++) = parse_complex(cell);
        }
        if (j != k) throw std::invalid_argument("matrix row has fewer than k entries");
    }
    return CoherenceMatrix::from_entries(std::move(m));
}

CoherenceMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open matrix file '" + path + "'");
    return read_matrix(in);
}

}  // namespace polcorr::cli
