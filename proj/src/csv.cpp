#include "curh/csv.hpp"

namespace curh::csv {

bool split_record(std::string_view line, std::vector<std::string>& out) {
    out.clear();
    std::string field;
    bool inQuotes = false;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (inQuotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    inQuotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            inQuotes = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
        ++i;
    }
    if (inQuotes) return false;
    out.push_back(std::move(field));
    return true;
}

std::string escape(std::string_view field) {
    bool needsQuotes = false;
    for (char c : field) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needsQuotes = true;
            break;
        }
    }
    if (!needsQuotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void Writer::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) buf_.push_back(',');
        buf_ += escape(fields[i]);
    }
    buf_.push_back('\n');
}

bool Reader::next(std::string_view& line, uint64_t& line_no) {
    if (pos_ >= text_.size()) return false;
    std::size_t end = text_.find('\n', pos_);
    std::size_t stop = (end == std::string_view::npos) ? text_.size() : end;
    std::size_t len = stop - pos_;
    if (len > 0 && text_[pos_ + len - 1] == '\r') --len;
    line = text_.substr(pos_, len);
    pos_ = (end == std::string_view::npos) ? text_.size() : end + 1;
    line_no = ++line_;
    return true;
}

} // namespace curh::csv
