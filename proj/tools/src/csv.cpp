#include "csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hcbf::cli {

namespace {

void append_number(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

std::string trajectory_csv(const TrajectoryLog& log) {
    const std::size_t n = log.rows.empty() ? 0 : log.rows.front().theta.size();
    std::string out = "t,px,py,vx,vy,udx,udy,ux,uy";
    for (std::size_t k = 0; k < n; ++k) {
        const std::string i = std::to_string(k);
        out += ",theta_" + i + ",h_" + i + ",cons_" + i + ",clear_" + i;
    }
    out += "\n";
    for (const LogRow& row : log.rows) {
        const double fields[] = {row.t,       row.p.x, row.p.y, row.v.x, row.v.y,
                                 row.u_des.x, row.u_des.y, row.u.x, row.u.y};
        bool first = true;
        for (double f : fields) {
            if (!first) out += ',';
            first = false;
            append_number(out, f);
        }
        for (std::size_t k = 0; k < n; ++k) {
            out += ',';
            append_number(out, row.theta[k]);
            out += ',';
            append_number(out, row.h[k]);
            out += ',';
            append_number(out, row.constraint[k]);
            out += ',';
            append_number(out, row.clearance[k]);
        }
        out += "\n";
    }
    return out;
}

TrajectoryLog parse_trajectory_csv(const std::string& text) {
    TrajectoryLog log;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("csv: empty document");
    const std::size_t columns = split(line, ',').size();
    if (columns < 9 || (columns - 9) % 4 != 0) {
        throw std::invalid_argument("csv: unexpected column count");
    }
    const std::size_t n = (columns - 9) / 4;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != columns) throw std::invalid_argument("csv: ragged row");
        std::vector<double> v(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) v[i] = std::strtod(cells[i].c_str(), nullptr);
        LogRow row;
        row.t = v[0];
        row.p = {v[1], v[2]};
        row.v = {v[3], v[4]};
        row.u_des = {v[5], v[6]};
        row.u = {v[7], v[8]};
        for (std::size_t k = 0; k < n; ++k) {
            row.theta.push_back(v[9 + 4 * k]);
            row.h.push_back(v[10 + 4 * k]);
            row.constraint.push_back(v[11 + 4 * k]);
            row.clearance.push_back(v[12 + 4 * k]);
        }
        log.rows.push_back(std::move(row));
    }
    return log;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path temp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + temp.string());
        out << content;
    }
    fs::rename(temp, target);
}

}  // namespace hcbf::cli
