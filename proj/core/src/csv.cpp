#include "qtp/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qtp/errors.hpp"
#include "qtp/version.hpp"

namespace qtp {

std::vector<std::string> emit_csv(const ResultBundle& bundle,
                                  const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error("emit_csv: cannot create '" + out_dir + "': " + ec.message());

    const std::string stamp = "# qtp " + std::string(kVersion) + " config " +
                              config_hash(bundle.config) + "\n";
    std::vector<std::string> written;
    char buf[40];
    for (const Table& t : bundle.tables) {
        const fs::path path = fs::path(out_dir) / (t.name + ".csv");
        std::ofstream out(path);
        if (!out) throw Error("emit_csv: cannot open '" + path.string() + "'");
        out << stamp;
        bool first = true;
        if (!t.label_header.empty()) {
            out << t.label_header;
            first = false;
        }
        for (const auto& c : t.columns) {
            if (!first) out << ',';
            out << c;
            first = false;
        }
        out << '\n';
        for (size_t i = 0; i < t.rows.size(); ++i) {
            first = true;
            if (!t.label_header.empty()) {
                out << t.labels.at(i);
                first = false;
            }
            for (double v : t.rows[i]) {
                if (!first) out << ',';
                std::snprintf(buf, sizeof(buf), "%.17g", v);
                out << buf;
                first = false;
            }
            out << '\n';
        }
        if (!out) throw Error("emit_csv: write failed for '" + path.string() + "'");
        written.push_back(path.string());
    }
    return written;
}

}  // namespace qtp
