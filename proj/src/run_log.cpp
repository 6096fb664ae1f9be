#include "atomic/run_log.hpp"

#include "atomic/errors.hpp"

#include <chrono>
#include <ctime>

namespace atomic {

RunLog::RunLog(const std::filesystem::path& file, bool deterministic)
    : out_(file, std::ios::binary | std::ios::trunc), deterministic_(deterministic) {
    if (!out_) throw Error(ErrorKind::IoError, "cannot open log '" + file.string() + "'");
}

void RunLog::start(std::string_view stage) { write(stage, "START"); }

void RunLog::end(std::string_view stage, std::string_view outcome) { write(stage, "END " + std::string(outcome)); }

void RunLog::info(std::string_view stage, std::string_view message) { write(stage, message); }

void RunLog::write(std::string_view stage, std::string_view text) {
    out_ << stamp() << " [" << stage << "] " << text << '\n';
    out_.flush();
}

std::string RunLog::stamp() const {
    if (deterministic_) return std::string(kFixedStamp);
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace atomic
