#include "haptolab/snapshot_io.hpp"

#include "haptolab/errors.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace haptolab {

std::string format_real(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_snapshot(std::ostream& out, const ScalarField& field, std::string_view name, double time)
{
    const Grid& g = field.grid();
    out << "# haptolab-snapshot v1\n";
    out << "# field=" << name << "\n";
    out << "# nx=" << g.nx() << " ny=" << g.ny() << " h=" << format_real(g.h())
        << " origin_x=" << format_real(g.origin().x) << " origin_y=" << format_real(g.origin().y) << "\n";
    out << "# time=" << format_real(time) << "\n";
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << format_real(field(i, j));
        }
        out << '\n';
    }
}

void write_snapshot(const std::filesystem::path& path, const ScalarField& field, std::string_view name, double time)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open " + path.string() + " for writing");
    }
    write_snapshot(out, field, name, time);
}

namespace {

double parse_real(std::string_view text)
{
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw Error("malformed number in snapshot: '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

Snapshot read_snapshot(std::istream& in)
{
    std::map<std::string, std::string> header;
    std::string line;
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            std::istringstream words(line.substr(1));
            std::string word;
            while (words >> word) {
                const auto eq = word.find('=');
                if (eq != std::string::npos) {
                    header[word.substr(0, eq)] = word.substr(eq + 1);
                }
            }
            continue;
        }
        std::string_view rest(line);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            values.push_back(parse_real(rest.substr(0, comma)));
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
    }
    for (const char* key : {"field", "nx", "ny", "h", "origin_x", "origin_y", "time"}) {
        if (header.find(key) == header.end()) {
            throw Error(std::string("snapshot header lacks '") + key + "'");
        }
    }
    const Grid grid(std::stoi(header["nx"]), std::stoi(header["ny"]), parse_real(header["h"]),
                    {parse_real(header["origin_x"]), parse_real(header["origin_y"])});
    if (values.size() != grid.size()) {
        throw Error("snapshot sample count does not match its header");
    }
    return Snapshot{header["field"], parse_real(header["time"]), ScalarField(grid, std::move(values))};
}

Snapshot read_snapshot(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    return read_snapshot(in);
}

}  // namespace haptolab
