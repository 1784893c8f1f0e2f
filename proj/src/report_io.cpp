#include "jumpflow/report_io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace jumpflow {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void atomic_write_text(const std::filesystem::path& target, std::string_view content) {
    const std::filesystem::path temp = target.string() + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + temp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed for " + temp.string());
    }
    std::filesystem::rename(temp, target);
}

AtomicCsv::AtomicCsv(std::filesystem::path target, std::string_view header)
    : target_(std::move(target)), temp_(target_.string() + ".tmp") {
    out_.open(temp_, std::ios::binary | std::ios::trunc);
    if (!out_) throw std::runtime_error("cannot open " + temp_.string() + " for writing");
    open_ = true;
    out_ << header << '\n';
}

AtomicCsv::~AtomicCsv() {
    try {
        close();
    } catch (...) {
        // destructor must not throw; the temp file is left behind as evidence
    }
}

void AtomicCsv::raw_row(std::string_view line) {
    if (!open_) throw std::logic_error("AtomicCsv: writer already closed");
    out_ << line << '\n';
}

void AtomicCsv::close() {
    if (!open_) return;
    out_.flush();
    if (!out_) throw std::runtime_error("write failed for " + temp_.string());
    out_.close();
    std::filesystem::rename(temp_, target_);
    open_ = false;
}

} // namespace jumpflow
