#pragma once

// CSV output with RFC-4180-style quoting. Floating-point fields are written
// with 17 significant digits through std::to_chars, which is locale-free and
// round-trips doubles exactly; identical results therefore serialize to
// identical bytes.

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ergolab {

inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

class CsvWriter {
   public:
    void field(std::string_view s) {
        sep();
        bool need_quotes = s.find_first_of(",\"\r\n") != std::string_view::npos;
        if (!need_quotes) {
            buf_.append(s);
            return;
        }
        buf_.push_back('"');
        for (char c : s) {
            if (c == '"') buf_.push_back('"');
            buf_.push_back(c);
        }
        buf_.push_back('"');
    }
    void field(double v) { field(std::string_view(format_double(v))); }
    void field(std::uint64_t v) { field(std::string_view(std::to_string(v))); }
    void field(std::int64_t v) { field(std::string_view(std::to_string(v))); }
    void field(int v) { field(std::string_view(std::to_string(v))); }
    void endrow() {
        buf_.push_back('\n');
        row_open_ = false;
    }
    const std::string& str() const { return buf_; }

   private:
    void sep() {
        if (row_open_) buf_.push_back(',');
        row_open_ = true;
    }
    std::string buf_;
    bool row_open_ = false;
};

// Minimal reader for the writer's dialect; used by round-trip tests.
inline std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    bool in_quotes = false, cell_open = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cell.push_back(c);
            }
            continue;
        }
        if (c == '"') {
            in_quotes = true;
            cell_open = true;
        } else if (c == ',') {
            row.push_back(std::move(cell));
            cell.clear();
            cell_open = true;
        } else if (c == '\n') {
            if (cell_open || !cell.empty() || !row.empty()) {
                row.push_back(std::move(cell));
                cell.clear();
                rows.push_back(std::move(row));
                row.clear();
            }
            cell_open = false;
        } else if (c != '\r') {
            cell.push_back(c);
        }
    }
    if (cell_open || !cell.empty() || !row.empty()) {
        row.push_back(std::move(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ergolab
