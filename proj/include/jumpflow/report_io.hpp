#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

namespace jumpflow {

// Shortest round-trip decimal rendering; identical bytes for identical
// doubles on every run.
std::string format_double(double x);

// Write via a temp file in the same directory, then rename into place.
void atomic_write_text(const std::filesystem::path& target, std::string_view content);

// CSV sink with the same temp+rename discipline. Cells are rendered
// with format_double; close() (or destruction) publishes the file.
class AtomicCsv {
public:
    AtomicCsv(std::filesystem::path target, std::string_view header);
    ~AtomicCsv();
    AtomicCsv(const AtomicCsv&) = delete;
    AtomicCsv& operator=(const AtomicCsv&) = delete;

    void raw_row(std::string_view line);

    template <typename... Cells>
    void row(const Cells&... cells) {
        std::string line;
        append_cells(line, cells...);
        raw_row(line);
    }

    void close();

private:
    static void append_cell(std::string& line, double v) { line += format_double(v); }
    static void append_cell(std::string& line, int v) { line += std::to_string(v); }
    static void append_cell(std::string& line, long v) { line += std::to_string(v); }
    static void append_cell(std::string& line, unsigned long v) { line += std::to_string(v); }
    static void append_cell(std::string& line, unsigned long long v) { line += std::to_string(v); }
    static void append_cell(std::string& line, const std::string& v) { line += v; }
    static void append_cell(std::string& line, const char* v) { line += v; }

    template <typename First, typename... Rest>
    static void append_cells(std::string& line, const First& first, const Rest&... rest) {
        append_cell(line, first);
        if constexpr (sizeof...(rest) > 0) {
            line += ',';
            append_cells(line, rest...);
        }
    }

    std::filesystem::path target_;
    std::filesystem::path temp_;
    std::ofstream out_;
    bool open_ = false;
};

} // namespace jumpflow
