#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace curh::csv {

// Splits one CSV record. Supports double-quoted fields with "" escapes.
// Returns false on unbalanced quotes.
bool split_record(std::string_view line, std::vector<std::string>& out);

// Quotes a field only when it contains a comma, quote or newline.
std::string escape(std::string_view field);

// Incremental writer producing byte-stable output ('\n' line ends).
class Writer {
public:
    explicit Writer(std::string header) { buf_ = std::move(header); buf_.push_back('\n'); }

    void row(const std::vector<std::string>& fields);
    const std::string& str() const { return buf_; }
    std::string take() { return std::move(buf_); }

private:
    std::string buf_;
};

// Line-oriented reader over an in-memory buffer. Handles both \n and \r\n.
class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    // Returns false at end of input. `line_no` is 1-based.
    bool next(std::string_view& line, uint64_t& line_no);

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    uint64_t line_ = 0;
};

} // namespace curh::csv
