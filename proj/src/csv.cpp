#include "ethics2vec/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "ethics2vec/errors.hpp"

namespace e2v {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open for writing");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open for reading");
    return in;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string chomp(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double parse_double(const std::string& field, const std::string& path, std::size_t line_no,
                    const char* column) {
    double v = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw ParseError(path, line_no, std::string("bad value for column '") + column + "'");
    return v;
}

std::uint8_t parse_binary(const std::string& field, const std::string& path, std::size_t line_no,
                          const char* column) {
    if (field == "0") return 0;
    if (field == "1") return 1;
    throw ParseError(path, line_no, std::string("column '") + column + "' must be 0 or 1");
}

void require_header(const std::vector<std::string>& got, const std::vector<std::string>& want,
                    const std::string& path) {
    for (std::size_t i = 0; i < want.size(); ++i) {
        if (i >= got.size())
            throw ParseError(path, 1, "missing column '" + want[i] + "'");
        if (got[i] != want[i])
            throw ParseError(path, 1,
                             "expected column '" + want[i] + "', found '" + got[i] + "'");
    }
    if (got.size() > want.size())
        throw ParseError(path, 1, "unexpected extra column '" + got[want.size()] + "'");
}

} // namespace

void write_decision_log(const std::string& path, const DecisionLog& log) {
    std::ofstream out = open_out(path);
    out << "score,action,truth\n";
    for (const Record& r : log.records)
        out << format_double(r.score) << ',' << int(r.action) << ',' << int(r.truth) << '\n';
}

DecisionLog read_decision_log(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path, 1, "missing header");
    require_header(split_fields(chomp(line)), {"score", "action", "truth"}, path);

    DecisionLog log;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = chomp(line);
        if (line.empty()) continue;
        const std::vector<std::string> f = split_fields(line);
        if (f.size() != 3) throw ParseError(path, line_no, "expected 3 fields");
        Record r;
        r.score = parse_double(f[0], path, line_no, "score");
        r.action = parse_binary(f[1], path, line_no, "action");
        r.truth = parse_binary(f[2], path, line_no, "truth");
        log.records.push_back(r);
    }
    return log;
}

void write_roc_csv(const std::string& path, const RocCurve& roc) {
    std::ofstream out = open_out(path);
    out << "tau,fpr,tpr\n";
    for (const RocPoint& p : roc.points)
        out << format_double(p.tau) << ',' << format_double(p.fpr) << ','
            << format_double(p.tpr) << '\n';
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out = open_out(path);
    out << "t,x,u\n";
    for (const TrajectoryStep& s : traj.steps)
        out << format_double(s.t) << ',' << format_double(s.x) << ',' << format_double(s.u)
            << '\n';
}

Trajectory read_trajectory_csv(const std::string& path, double destination) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path, 1, "missing header");
    require_header(split_fields(chomp(line)), {"t", "x", "u"}, path);

    Trajectory traj;
    traj.destination = destination;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = chomp(line);
        if (line.empty()) continue;
        const std::vector<std::string> f = split_fields(line);
        if (f.size() != 3) throw ParseError(path, line_no, "expected 3 fields");
        TrajectoryStep s;
        s.t = parse_double(f[0], path, line_no, "t");
        s.x = parse_double(f[1], path, line_no, "x");
        s.u = parse_double(f[2], path, line_no, "u");
        traj.steps.push_back(s);
    }
    if (traj.steps.size() >= 2) traj.dt = traj.steps[1].t - traj.steps[0].t;
    return traj;
}

void write_trace_csv(const std::string& path, const Trajectory& traj, const EthicsTrace& trace) {
    if (traj.size() != trace.n_steps)
        throw DomainError(Err::invalid_config, "trajectory and trace lengths differ");
    std::ofstream out = open_out(path);
    out << "t,x,u";
    for (std::size_t i = 0; i < trace.n_risks(); ++i) out << ",E" << (i + 1);
    out << '\n';
    for (std::size_t k = 0; k < trace.n_steps; ++k) {
        const TrajectoryStep& s = traj.steps[k];
        out << format_double(s.t) << ',' << format_double(s.x) << ',' << format_double(s.u);
        for (std::size_t i = 0; i < trace.n_risks(); ++i)
            out << ',' << format_double(trace.entry(k, i));
        out << '\n';
    }
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out = open_out(path);
    out << header << '\n';
    for (const std::vector<double>& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
}

} // namespace e2v
