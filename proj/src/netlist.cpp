#include "atomic/netlist.hpp"

#include "atomic/errors.hpp"
#include "atomic/numfmt.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace atomic {

namespace {

constexpr std::size_t kPointsPerLine = 4;

void write_pwl(std::ostringstream& out, const std::string& head, const std::vector<PwlPoint>& pts, bool nan_as_zero) {
    out << head << " PWL(";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i > 0 && i % kPointsPerLine == 0) out << "\n+ ";
        else if (i > 0) out << ' ';
        const double v = (nan_as_zero && pts[i].value != pts[i].value) ? 0.0 : pts[i].value;
        out << format_double(pts[i].time) << ' ' << format_double(v);
    }
    out << ")\n";
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

// Joins '+' continuation lines and drops comments.
std::vector<std::string> logical_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '*') continue;
        if (line[first] == '+' && !lines.empty()) {
            lines.back() += ' ' + line.substr(first + 1);
        } else {
            lines.push_back(line.substr(first));
        }
    }
    return lines;
}

std::vector<double> pwl_numbers(const std::string& line) {
    const auto open = line.find("PWL(");
    const auto close = line.rfind(')');
    std::vector<double> out;
    if (open == std::string::npos || close == std::string::npos || close < open) return out;
    std::istringstream in(line.substr(open + 4, close - open - 4));
    std::string tok;
    while (in >> tok) out.push_back(parse_double(tok));
    return out;
}

}  // namespace

std::string render_netlist(const ValidatedBundle& bundle, const WaveformSchedule& schedule,
                           std::span<const double> initial_w, const std::string& title,
                           std::size_t substeps_per_cycle) {
    const auto& p = bundle.params;
    const auto& m = p.model;
    const auto& topo = bundle.topology;
    std::ostringstream out;
    out << "* " << title << "\n";
    out << "* topology " << topo.name << ", " << schedule.step_count << " steps\n";

    out << ".subckt memristor p n params: w0=0 ron=" << format_double(p.r_on) << " roff=" << format_double(p.r_off)
        << "\n";
    out << "Cw w 0 1 IC={w0}\n";
    out << "Rw w 0 1e15\n";
    out << "Bw 0 w I=if(V(p,n)>=" << format_double(m.v_on) << ", " << format_double(m.k_on) << "*pow((V(p,n)-"
        << format_double(m.v_on) << ")/" << format_double(m.v_on) << "," << format_double(m.alpha)
        << ")*(V(w)<1), if(V(p,n)<=" << format_double(m.v_off) << ", -" << format_double(m.k_off)
        << "*pow((V(p,n)-(" << format_double(m.v_off) << "))/(" << format_double(m.v_off) << "),"
        << format_double(m.alpha) << ")*(V(w)>0), 0))\n";
    if (m.map == ResistanceMap::Linear) {
        out << "Bm p n I=V(p,n)/(roff+limit(V(w),0,1)*(ron-roff))\n";
    } else {
        out << "Bm p n I=V(p,n)/(roff*pow(ron/roff,limit(V(w),0,1)))\n";
    }
    out << ".ends memristor\n";
    out << ".model swmod SW(Ron=1m Roff=1T Vt=0.5 Vh=0.1)\n";

    for (const auto& sec : topo.sections) {
        out << "RG" << sec.id << " n" << sec.id << " 0 " << format_double(sec.ground_resistance) << "\n";
    }
    for (std::size_t d = 0; d < schedule.device_names.size(); ++d) {
        const auto& name = schedule.device_names[d];
        out << "XM_" << name << " t_" << name << " n" << bundle.device_section[d] << " memristor params: w0="
            << format_double(initial_w[d]) << "\n";
        write_pwl(out, "V_" + name + " d_" + name + " 0", pwl_points(schedule.device_levels[d], schedule.cycle_time),
                  true);
    }
    for (std::size_t k = 0; k < schedule.switch_names.size(); ++k) {
        const auto& name = schedule.switch_names[k];
        const SwitchWiring* sw = topo.find_switch(name);
        if (!sw) continue;
        std::string a;
        std::string b;
        switch (sw->role) {
            case SwitchRole::Device:
                a = "d_" + sw->device;
                b = "t_" + sw->device;
                break;
            case SwitchRole::Ground:
                a = "n" + std::to_string(sw->section);
                b = "0";
                break;
            case SwitchRole::Bridge:
                a = "n" + std::to_string(sw->section);
                b = "n" + std::to_string(sw->other_section);
                break;
        }
        out << "S_" << name << " " << a << " " << b << " c_" << name << " 0 swmod\n";
        write_pwl(out, "VC_" + name + " c_" + name + " 0",
                  pwl_points(schedule.switch_states[k], schedule.cycle_time), false);
    }
    const double duration = static_cast<double>(schedule.step_count) * schedule.cycle_time;
    out << ".tran 0 " << format_double(duration) << " 0 "
        << format_double(schedule.cycle_time / static_cast<double>(substeps_per_cycle)) << " uic\n";
    out << ".end\n";
    return out.str();
}

std::filesystem::path export_netlist(const ValidatedBundle& bundle, std::span<const double> initial_w,
                                     const std::filesystem::path& out, std::size_t substeps_per_cycle) {
    if (bundle.step_count() == 0) {
        throw Error(ErrorKind::IoError, "refusing to export a netlist with zero transient duration");
    }
    if (initial_w.size() != bundle.device_count()) {
        throw Error(ErrorKind::InvalidParameters, "initial state needs one value per memristor");
    }
    const WaveformSchedule schedule = eval_algo(bundle);
    const std::string text =
        render_netlist(bundle, schedule, initial_w, out.stem().string() + " (" + bundle.config.algorithm_file + ")",
                       substeps_per_cycle);
    if (out.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(out.parent_path(), ec);
    }
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorKind::IoError, "cannot write '" + out.string() + "'");
    file << text;
    if (!file) throw Error(ErrorKind::IoError, "write failed for '" + out.string() + "'");
    return out;
}

NetlistLint lint_netlist(std::string_view text) {
    NetlistLint lint;
    int depth = 0;
    std::set<std::string> top_names;
    std::set<std::string> sub_names;
    for (const auto& line : logical_lines(text)) {
        std::istringstream in(line);
        std::string head;
        in >> head;
        const std::string key = lower(head);
        if (key == ".subckt") {
            if (depth != 0) lint.problems.push_back("nested .subckt");
            ++depth;
            sub_names.clear();
            continue;
        }
        if (key == ".ends") {
            if (depth == 0) lint.problems.push_back(".ends without .subckt");
            --depth;
            continue;
        }
        if (key == ".tran") {
            lint.has_tran = true;
            continue;
        }
        if (key == ".end") {
            lint.has_end = true;
            continue;
        }
        if (key.front() == '.') continue;

        auto& names = depth > 0 ? sub_names : top_names;
        if (!names.insert(key).second) {
            lint.unique_element_names = false;
            lint.problems.push_back("duplicate element " + head);
        }
        if (depth > 0) continue;
        switch (key.front()) {
            case 'x':
                if (lower(line).find(" memristor ") != std::string::npos) ++lint.memristor_instances;
                break;
            case 'r':
                if (key.rfind("rg", 0) == 0) ++lint.ground_resistors;
                break;
            case 's':
                ++lint.switches;
                break;
            case 'v': {
                ++lint.sources;
                const auto nums = pwl_numbers(line);
                if (nums.size() % 2 != 0) lint.problems.push_back("odd PWL list in " + head);
                for (std::size_t i = 2; i + 1 < nums.size(); i += 2) {
                    if (nums[i] < nums[i - 2]) {
                        lint.pwl_monotone = false;
                        lint.problems.push_back("PWL time decreases in " + head);
                        break;
                    }
                }
                break;
            }
            default:
                break;
        }
    }
    if (depth != 0) {
        lint.subcircuits_balanced = false;
        lint.problems.push_back("unterminated .subckt");
    }
    if (!lint.has_tran) lint.problems.push_back("missing .tran");
    if (!lint.has_end) lint.problems.push_back("missing .end");
    return lint;
}

std::map<std::string, std::vector<PwlPoint>> read_netlist_pwl(std::string_view text) {
    std::map<std::string, std::vector<PwlPoint>> out;
    for (const auto& line : logical_lines(text)) {
        std::string head = line.substr(0, line.find(' '));
        std::string name;
        if (head.rfind("VC_", 0) == 0) {
            name = head.substr(3);
        } else if (head.rfind("V_", 0) == 0) {
            name = head.substr(2);
        } else {
            continue;
        }
        const auto nums = pwl_numbers(line);
        std::vector<PwlPoint> pts;
        for (std::size_t i = 0; i + 1 < nums.size(); i += 2) pts.push_back({nums[i], nums[i + 1]});
        out[name] = std::move(pts);
    }
    return out;
}

}  // namespace atomic
