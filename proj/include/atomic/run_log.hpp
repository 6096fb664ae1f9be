#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

namespace atomic {

/// Append-only text log of one pipeline run. In deterministic mode every
/// timestamp is a fixed placeholder so logs compare byte for byte.
class RunLog {
public:
    RunLog(const std::filesystem::path& file, bool deterministic);

    void start(std::string_view stage);
    void end(std::string_view stage, std::string_view outcome);
    void info(std::string_view stage, std::string_view message);

    static constexpr std::string_view kFixedStamp = "0000-00-00T00:00:00Z";

private:
    void write(std::string_view stage, std::string_view text);
    std::string stamp() const;

    std::ofstream out_;
    bool deterministic_;
};

}  // namespace atomic
