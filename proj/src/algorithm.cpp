#include "atomic/algorithm.hpp"

#include "atomic/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace atomic {

namespace {

struct Cursor {
    std::size_t line;
    std::size_t column;
};

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

// Drops every whitespace character; columns are reported against the raw line.
std::string squeeze(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        if (!is_space(c)) out += c;
    }
    return out;
}

std::vector<DeviceIndex> parse_index_list(const std::string& body, const std::string& token, Cursor at) {
    std::vector<DeviceIndex> out;
    if (body.empty()) {
        throw Error(ErrorKind::MalformedToken, "missing device index in '" + token + "'", at.line, at.column);
    }
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = body.find(',', pos);
        const std::string part = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (part.empty() || !std::all_of(part.begin(), part.end(), [](unsigned char c) { return std::isdigit(c); })) {
            throw Error(ErrorKind::MalformedToken, "bad index list in '" + token + "'", at.line, at.column);
        }
        DeviceIndex value = 0;
        const auto res = std::from_chars(part.data(), part.data() + part.size(), value);
        if (res.ec != std::errc{}) {
            throw Error(ErrorKind::MalformedToken, "index out of integer range in '" + token + "'", at.line,
                        at.column);
        }
        out.push_back(value);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

SectionOp parse_token(std::string_view raw, Cursor at) {
    const std::string token = squeeze(raw);
    if (token.empty()) {
        throw Error(ErrorKind::MalformedToken, "empty section", at.line, at.column);
    }
    if (token == "NOP") {
        return NopOp{};
    }
    const char opcode = token.front();
    const std::string body = token.substr(1);
    if (opcode == 'I') {
        const auto idx = parse_index_list(body, token, at);
        if (idx.size() != 2) {
            throw Error(ErrorKind::MalformedToken, "IMPLY takes exactly two indices: '" + token + "'", at.line,
                        at.column);
        }
        if (idx[0] == idx[1]) {
            throw Error(ErrorKind::DuplicateDeviceInStep, "IMPLY source equals target in '" + token + "'", at.line,
                        at.column);
        }
        return ImplyOp{idx[0], idx[1]};
    }
    if (opcode == 'F') {
        auto idx = parse_index_list(body, token, at);
        if (idx.size() > 3) {
            throw Error(ErrorKind::MalformedToken, "FALSE resets at most three devices: '" + token + "'", at.line,
                        at.column);
        }
        const std::set<DeviceIndex> unique(idx.begin(), idx.end());
        if (unique.size() != idx.size()) {
            throw Error(ErrorKind::DuplicateDeviceInStep, "repeated FALSE target in '" + token + "'", at.line,
                        at.column);
        }
        return FalseOp{std::move(idx)};
    }
    throw Error(ErrorKind::MalformedToken, "unknown opcode in '" + token + "'", at.line, at.column);
}

}  // namespace

AlgorithmProgram parse_algorithm(std::string_view text, std::size_t section_count) {
    AlgorithmProgram program;
    program.section_count = section_count;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
        start = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        const auto first = std::find_if_not(line.begin(), line.end(), is_space);
        if (first == line.end() || *first == '#') continue;

        Step step;
        std::set<DeviceIndex> seen;
        std::size_t col = 0;
        while (true) {
            const std::size_t bar = line.find('|', col);
            const std::string_view part =
                line.substr(col, bar == std::string_view::npos ? std::string_view::npos : bar - col);
            const auto lead = std::find_if_not(part.begin(), part.end(), is_space);
            const Cursor at{line_no, col + static_cast<std::size_t>(lead - part.begin()) + 1};
            SectionOp op = parse_token(part, at);
            for (DeviceIndex d : devices_of(op)) {
                if (!seen.insert(d).second) {
                    throw Error(ErrorKind::DuplicateDeviceInStep,
                                "device " + std::to_string(d) + " used twice in one step", at.line, at.column);
                }
            }
            step.push_back(std::move(op));
            if (bar == std::string_view::npos) break;
            col = bar + 1;
        }
        if (step.size() != section_count) {
            throw Error(ErrorKind::SectionCountMismatch,
                        "expected " + std::to_string(section_count) + " sections, found " +
                            std::to_string(step.size()),
                        line_no, 1);
        }
        program.steps.push_back(std::move(step));
    }
    if (program.steps.empty()) {
        throw Error(ErrorKind::EmptyProgram, "no steps after removing comments and blank lines");
    }
    return program;
}

std::string render_op(const SectionOp& op) {
    if (const auto* imp = std::get_if<ImplyOp>(&op)) {
        return "I" + std::to_string(imp->src) + "," + std::to_string(imp->dst);
    }
    if (const auto* f = std::get_if<FalseOp>(&op)) {
        std::string out = "F";
        for (std::size_t i = 0; i < f->targets.size(); ++i) {
            if (i > 0) out += ',';
            out += std::to_string(f->targets[i]);
        }
        return out;
    }
    return "NOP";
}

std::string render_step(const Step& step) {
    std::string out;
    for (std::size_t i = 0; i < step.size(); ++i) {
        if (i > 0) out += " | ";
        out += render_op(step[i]);
    }
    return out;
}

std::string render_algorithm(const AlgorithmProgram& program) {
    std::string out;
    for (const auto& step : program.steps) {
        out += render_step(step);
        out += '\n';
    }
    return out;
}

std::vector<DeviceIndex> devices_of(const SectionOp& op) {
    if (const auto* imp = std::get_if<ImplyOp>(&op)) return {imp->src, imp->dst};
    if (const auto* f = std::get_if<FalseOp>(&op)) return f->targets;
    return {};
}

}  // namespace atomic
