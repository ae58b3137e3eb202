#include "satproc/dimacs.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace satproc {

namespace {

void write_clause(std::ostringstream& out, const Clause& c) {
    for (Lit l : c) out << l.to_dimacs() << ' ';
    out << "0\n";
}

struct ParsedCnf {
    std::uint32_t n = 0;
    std::size_t clause_count = 0;
    std::vector<Clause> clauses;
};

ParsedCnf parse(const std::string& text) {
    ParsedCnf result;
    bool header_seen = false;
    std::vector<Lit> current;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == 'p') {
            if (header_seen) throw DimacsError(line_no, "duplicate header");
            std::istringstream hdr(line);
            std::string p, fmt;
            long long n = -1, m = -1;
            hdr >> p >> fmt >> n >> m;
            if (hdr.fail() || fmt != "cnf" || n < 0 || m < 0)
                throw DimacsError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
            result.n = static_cast<std::uint32_t>(n);
            result.clause_count = static_cast<std::size_t>(m);
            header_seen = true;
            continue;
        }
        if (!header_seen) throw DimacsError(line_no, "clause before header");
        std::istringstream body(line);
        std::string tok;
        while (body >> tok) {
            long long v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size())
                throw DimacsError(line_no, "malformed literal '" + tok + "'");
            if (v == 0) {
                if (current.empty()) throw DimacsError(line_no, "empty clause");
                for (std::size_t i = 0; i < current.size(); ++i)
                    for (std::size_t j = i + 1; j < current.size(); ++j)
                        if (current[i].var() == current[j].var())
                            throw DimacsError(line_no, "repeated variable in clause");
                result.clauses.emplace_back(current);
                current.clear();
                continue;
            }
            std::uint64_t var = static_cast<std::uint64_t>(v < 0 ? -v : v) - 1;
            if (var >= result.n) throw DimacsError(line_no, "literal out of range");
            current.emplace_back(static_cast<Var>(var), v < 0);
        }
    }
    if (!header_seen) throw DimacsError(line_no, "missing header");
    if (!current.empty()) throw DimacsError(line_no, "unterminated clause");
    if (result.clauses.size() != result.clause_count)
        throw DimacsError(line_no, "clause count does not match header");
    return result;
}

}  // namespace

std::string dimacs_write(const Formula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
    for (const Clause& c : f.clauses()) write_clause(out, c);
    return out.str();
}

std::string dimacs_write(const ResidualFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.n << ' ' << f.clauses.size() << '\n';
    for (const Clause& c : f.clauses) write_clause(out, c);
    return out.str();
}

Formula dimacs_read(const std::string& text, std::uint32_t expected_k, std::uint32_t k_hint) {
    ParsedCnf parsed = parse(text);
    std::uint32_t k = expected_k;
    if (k == 0) k = parsed.clauses.empty() ? k_hint : static_cast<std::uint32_t>(parsed.clauses[0].width());
    Formula f(parsed.n, k);
    for (auto& c : parsed.clauses) {
        if (c.width() != k) throw DimacsError(0, "clause width differs from k=" + std::to_string(k));
        f.append(std::move(c));
    }
    return f;
}

ResidualFormula dimacs_read_residual(const std::string& text) {
    ParsedCnf parsed = parse(text);
    return ResidualFormula{parsed.n, std::move(parsed.clauses)};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace satproc
