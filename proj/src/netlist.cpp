#include "netbatch/netlist.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "netbatch/error.hpp"

namespace netbatch {

Point2 pin_center(const std::vector<Pin>& pins) {
    if (pins.empty()) return {};
    double sx = 0.0;
    double sy = 0.0;
    for (const Pin& p : pins) {
        sx += p.x;
        sy += p.y;
    }
    const auto n = static_cast<double>(pins.size());
    return {sx / n, sy / n};
}

std::int64_t hpwl(const Net& net) {
    if (net.pins.empty()) return 0;
    auto [min_x, max_x] = std::minmax_element(net.pins.begin(), net.pins.end(),
                                              [](const Pin& a, const Pin& b) { return a.x < b.x; });
    auto [min_y, max_y] = std::minmax_element(net.pins.begin(), net.pins.end(),
                                              [](const Pin& a, const Pin& b) { return a.y < b.y; });
    return static_cast<std::int64_t>(max_x->x - min_x->x) + (max_y->y - min_y->y);
}

Net make_net(NetId id, std::vector<Pin> pins, std::vector<Segment> segments) {
    Net net;
    net.id = id;
    net.center = pin_center(pins);
    net.pins = std::move(pins);
    net.segments = std::move(segments);
    return net;
}

void validate_grid(const GridDims& grid) {
    if (grid.x <= 0 || grid.y <= 0 || grid.layers <= 0) {
        fail(ErrorKind::Validation, "grid dimensions must be positive");
    }
    // Linear indices are 64-bit; keep the product well inside that range.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / 4;
    const auto xy = static_cast<std::uint64_t>(grid.x) * static_cast<std::uint64_t>(grid.y);
    if (xy > limit / static_cast<std::uint64_t>(grid.layers)) {
        fail(ErrorKind::Validation, "grid is too large to index");
    }
}

void validate_net(const Net& net, const GridDims& grid) {
    const std::string who = "net " + std::to_string(net.id);
    if (net.pins.empty()) fail(ErrorKind::Validation, who + " has no pins");
    for (const Pin& p : net.pins) {
        if (!grid.contains(p.x, p.y, p.layer)) {
            fail(ErrorKind::Validation, who + ": pin (" + std::to_string(p.x) + "," +
                                            std::to_string(p.y) + "," + std::to_string(p.layer) +
                                            ") is outside the grid");
        }
    }
    for (const Segment& s : net.segments) {
        if (s.lo > s.hi) fail(ErrorKind::Validation, who + ": segment span is reversed");
        const bool horizontal = s.orientation == Orientation::Horizontal;
        const bool ok = horizontal ? (grid.contains(s.lo, s.fixed, s.layer) &&
                                      grid.contains(s.hi, s.fixed, s.layer))
                                   : (grid.contains(s.fixed, s.lo, s.layer) &&
                                      grid.contains(s.fixed, s.hi, s.layer));
        if (!ok) fail(ErrorKind::Validation, who + ": segment leaves the grid");
    }
}

void validate_netlist(const Netlist& netlist) {
    validate_grid(netlist.grid);
    for (std::size_t i = 0; i < netlist.nets.size(); ++i) {
        const Net& net = netlist.nets[i];
        if (net.id != static_cast<NetId>(i)) {
            fail(ErrorKind::Validation,
                 "net ids must be dense and in order; expected " + std::to_string(i) + ", got " +
                     std::to_string(net.id));
        }
        validate_net(net, netlist.grid);
    }
}

namespace {

struct PendingNet {
    NetId id = 0;
    std::size_t declared_pins = 0;
    std::size_t line = 0;
    std::vector<Pin> pins;
    std::vector<Segment> segments;
};

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    fail(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

template <typename T>
T read_field(std::istringstream& fields, std::size_t line, const char* name) {
    long long value = 0;
    if (!(fields >> value)) parse_fail(line, std::string("expected integer for ") + name);
    if (value < std::numeric_limits<T>::min() || value > std::numeric_limits<T>::max()) {
        parse_fail(line, std::string(name) + " out of range");
    }
    return static_cast<T>(value);
}

void expect_end(std::istringstream& fields, std::size_t line) {
    std::string extra;
    if (fields >> extra) parse_fail(line, "unexpected token '" + extra + "'");
}

void finish_net(PendingNet& pending, Netlist& netlist) {
    if (pending.pins.size() != pending.declared_pins) {
        parse_fail(pending.line, "net " + std::to_string(pending.id) + " declares " +
                                     std::to_string(pending.declared_pins) + " pins but has " +
                                     std::to_string(pending.pins.size()));
    }
    Net net = make_net(pending.id, std::move(pending.pins), std::move(pending.segments));
    validate_net(net, netlist.grid);
    if (net.segments.empty()) net.segments = build_rsmt(net, netlist.grid);
    netlist.nets.push_back(std::move(net));
}

}  // namespace

Netlist parse_netlist(std::istream& in) {
    Netlist netlist;
    bool have_grid = false;
    std::optional<PendingNet> current;
    std::string raw;
    std::size_t line_no = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream fields(raw);
        std::string keyword;
        if (!(fields >> keyword)) continue;

        if (keyword == "grid") {
            if (have_grid) parse_fail(line_no, "duplicate grid line");
            netlist.grid.x = read_field<std::int32_t>(fields, line_no, "x");
            netlist.grid.y = read_field<std::int32_t>(fields, line_no, "y");
            netlist.grid.layers = read_field<std::int32_t>(fields, line_no, "layers");
            expect_end(fields, line_no);
            validate_grid(netlist.grid);
            have_grid = true;
            continue;
        }
        if (!have_grid) parse_fail(line_no, "expected 'grid' header first");

        if (keyword == "net") {
            if (current) finish_net(*current, netlist);
            PendingNet next;
            next.line = line_no;
            next.id = read_field<NetId>(fields, line_no, "net id");
            const auto n = read_field<std::int32_t>(fields, line_no, "pin count");
            expect_end(fields, line_no);
            if (n < 1) parse_fail(line_no, "net must have at least one pin");
            if (next.id != static_cast<NetId>(netlist.nets.size())) {
                fail(ErrorKind::Validation, "line " + std::to_string(line_no) + ": net id " +
                                                std::to_string(next.id) + " is not the next dense id " +
                                                std::to_string(netlist.nets.size()));
            }
            next.declared_pins = static_cast<std::size_t>(n);
            current = std::move(next);
        } else if (keyword == "pin") {
            if (!current) parse_fail(line_no, "pin outside of a net");
            Pin p;
            p.x = read_field<std::int32_t>(fields, line_no, "x");
            p.y = read_field<std::int32_t>(fields, line_no, "y");
            p.layer = read_field<std::int32_t>(fields, line_no, "layer");
            expect_end(fields, line_no);
            current->pins.push_back(p);
        } else if (keyword == "hseg" || keyword == "vseg") {
            if (!current) parse_fail(line_no, keyword + " outside of a net");
            Segment s;
            s.orientation = keyword == "hseg" ? Orientation::Horizontal : Orientation::Vertical;
            s.layer = read_field<std::int32_t>(fields, line_no, "layer");
            s.fixed = read_field<std::int32_t>(fields, line_no, "fixed coordinate");
            const auto a = read_field<std::int32_t>(fields, line_no, "span start");
            const auto b = read_field<std::int32_t>(fields, line_no, "span end");
            expect_end(fields, line_no);
            s.lo = std::min(a, b);
            s.hi = std::max(a, b);
            current->segments.push_back(s);
        } else {
            parse_fail(line_no, "unknown keyword '" + keyword + "'");
        }
    }
    if (!have_grid) parse_fail(line_no, "missing 'grid' header");
    if (current) finish_net(*current, netlist);
    return netlist;
}

Netlist parse_netlist_text(const std::string& text) {
    std::istringstream in(text);
    return parse_netlist(in);
}

Netlist read_netlist_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot open netlist '" + path + "'");
    return parse_netlist(in);
}

void write_netlist(std::ostream& out, const Netlist& netlist) {
    const GridDims& g = netlist.grid;
    out << "grid " << g.x << ' ' << g.y << ' ' << g.layers << '\n';
    for (const Net& net : netlist.nets) {
        out << "net " << net.id << ' ' << net.pins.size() << '\n';
        for (const Pin& p : net.pins) out << "pin " << p.x << ' ' << p.y << ' ' << p.layer << '\n';
        for (const Segment& s : net.segments) {
            out << (s.orientation == Orientation::Horizontal ? "hseg " : "vseg ") << s.layer << ' '
                << s.fixed << ' ' << s.lo << ' ' << s.hi << '\n';
        }
    }
}

std::string netlist_to_text(const Netlist& netlist) {
    std::ostringstream out;
    write_netlist(out, netlist);
    return out.str();
}

void write_netlist_file(const std::string& path, const Netlist& netlist) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::Io, "cannot write netlist '" + path + "'");
    write_netlist(out, netlist);
    if (!out) fail(ErrorKind::Io, "write failed for '" + path + "'");
}

}  // namespace netbatch
