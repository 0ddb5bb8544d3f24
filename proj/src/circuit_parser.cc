// Copyright 2026 The xorsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xorsim/circuit_parser.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "xorsim/errors.h"

namespace xorsim {

namespace {

struct Token {
    std::string text;
    int column;
};

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool is_identifier(const std::string &s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

/// Cursor over one statement's tokens.
class Line {
   public:
    Line(int number, std::vector<Token> tokens, int end_column)
        : number_(number), tokens_(std::move(tokens)), end_column_(end_column) {
    }

    int number() const {
        return number_;
    }
    bool done() const {
        return pos_ >= tokens_.size();
    }
    const Token *peek() const {
        return done() ? nullptr : &tokens_[pos_];
    }
    int column() const {
        return done() ? end_column_ : tokens_[pos_].column;
    }

    [[noreturn]] void expected(const std::string &what) const {
        std::string found = done() ? "end of line" : "'" + tokens_[pos_].text + "'";
        throw CircuitError(CircuitErrorKind::SyntaxError, number_, column(), "expected " + what + ", found " + found);
    }

    const Token &next(const std::string &what) {
        if (done()) {
            expected(what);
        }
        return tokens_[pos_++];
    }

    std::string identifier(const std::string &what) {
        if (done() || !is_identifier(tokens_[pos_].text) || tokens_[pos_].text.find('=') != std::string::npos) {
            expected(what);
        }
        return tokens_[pos_++].text;
    }

    double number(const std::string &what) {
        if (done()) {
            expected(what);
        }
        double v;
        if (!parse_double(tokens_[pos_].text, v)) {
            expected(what);
        }
        pos_++;
        return v;
    }

    int integer(const std::string &what) {
        if (done()) {
            expected(what);
        }
        const std::string &t = tokens_[pos_].text;
        int v;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || ptr != t.data() + t.size()) {
            expected(what);
        }
        pos_++;
        return v;
    }

    /// Lower-cased keyword drawn from `choices`.
    std::string keyword(const std::vector<std::string> &choices, const std::string &what) {
        if (done()) {
            expected(what);
        }
        std::string k = lower(tokens_[pos_].text);
        if (std::find(choices.begin(), choices.end(), k) == choices.end()) {
            expected(what);
        }
        pos_++;
        return k;
    }

    void end() const {
        if (!done()) {
            expected("end of line");
        }
    }

    static bool parse_double(const std::string &t, double &v) {
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        return ec == std::errc{} && ptr == t.data() + t.size() && std::isfinite(v);
    }

   private:
    int number_;
    std::vector<Token> tokens_;
    int end_column_;
    size_t pos_ = 0;
};

/// key=value options; keys are case-insensitive and may appear once.
struct Options {
    std::map<std::string, std::pair<std::string, int>> values;

    static Options read(Line &line, const std::vector<std::string> &allowed) {
        Options o;
        std::string listing;
        for (const auto &k : allowed) {
            listing += (listing.empty() ? "" : "|") + k + "=";
        }
        while (!line.done()) {
            const Token &t = *line.peek();
            auto eq = t.text.find('=');
            std::string key = lower(t.text.substr(0, eq));
            if (eq == std::string::npos || std::find(allowed.begin(), allowed.end(), key) == allowed.end() ||
                o.values.contains(key)) {
                line.expected("option (" + listing + ")");
            }
            o.values[key] = {t.text.substr(eq + 1), t.column + static_cast<int>(eq) + 1};
            line.next("option");
        }
        return o;
    }

    bool has(const std::string &key) const {
        return values.contains(key);
    }

    double number(const Line &line, const std::string &key, double fallback) const {
        auto it = values.find(key);
        if (it == values.end()) {
            return fallback;
        }
        double v;
        if (!Line::parse_double(it->second.first, v)) {
            throw CircuitError(
                CircuitErrorKind::SyntaxError, line.number(), it->second.second, "expected number for " + key + "=");
        }
        return v;
    }

    std::string name(const Line &line, const std::string &key, const std::string &fallback) const {
        auto it = values.find(key);
        if (it == values.end()) {
            return fallback;
        }
        if (!is_identifier(it->second.first)) {
            throw CircuitError(
                CircuitErrorKind::SyntaxError, line.number(), it->second.second, "expected identifier for " + key + "=");
        }
        return it->second.first;
    }
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view raw = text.substr(start, end - start);
        number++;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        std::vector<Token> tokens;
        size_t i = 0;
        while (i < raw.size()) {
            if (std::isspace(static_cast<unsigned char>(raw[i]))) {
                i++;
                continue;
            }
            size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) {
                j++;
            }
            tokens.push_back({std::string(raw.substr(i, j - i)), static_cast<int>(i) + 1});
            i = j;
        }
        size_t trimmed = raw.size();
        while (trimmed > 0 && std::isspace(static_cast<unsigned char>(raw[trimmed - 1]))) {
            trimmed--;
        }
        if (!tokens.empty()) {
            lines.emplace_back(number, std::move(tokens), static_cast<int>(trimmed) + 1);
        }
        if (end == text.size()) {
            break;
        }
        start = end + 1;
    }
    return lines;
}

SourceSpec parse_source(Line &line) {
    std::string kind = line.keyword({"ideal", "vacuum", "spdc", "coherent"}, "source kind (ideal|vacuum|spdc|coherent)");
    if (kind == "vacuum") {
        std::string port = line.identifier("port name");
        line.end();
        return SourceSpec::vacuum(port);
    }
    if (kind == "spdc") {
        std::string p1 = line.identifier("port name");
        std::string p2 = line.identifier("second port name");
        Options o = Options::read(line, {"p", "angle", "sigma", "sigma1", "sigma2", "t", "t1", "t2", "family1", "family2"});
        if (!o.has("p")) {
            line.expected("p=<pair probability>");
        }
        double sigma = o.number(line, "sigma", 1);
        double t = o.number(line, "t", 0);
        PhotonWavepacket w1{o.number(line, "t1", t), o.number(line, "sigma1", sigma), o.name(line, "family1", "spdc")};
        PhotonWavepacket w2{o.number(line, "t2", t), o.number(line, "sigma2", sigma), o.name(line, "family2", "spdc")};
        SourceSpec s = SourceSpec::spdc_pair(p1, p2, o.number(line, "p", 0), w1, w2);
        s.angle_deg = o.number(line, "angle", 0);
        return s;
    }
    std::string port = line.identifier("port name");
    if (kind == "ideal") {
        Options o = Options::read(line, {"angle", "sigma", "t", "family"});
        PhotonWavepacket w{o.number(line, "t", 0), o.number(line, "sigma", 1), o.name(line, "family", "ideal")};
        return SourceSpec::ideal(port, o.number(line, "angle", 0), w);
    }
    Options o = Options::read(line, {"mu", "angle", "sigma", "t", "family"});
    if (!o.has("mu")) {
        line.expected("mu=<mean photon number>");
    }
    PhotonWavepacket w{o.number(line, "t", 0), o.number(line, "sigma", 1), o.name(line, "family", "laser")};
    SourceSpec s = SourceSpec::coherent(port, o.number(line, "mu", 0), w);
    s.angle_deg = o.number(line, "angle", 0);
    return s;
}

}  // namespace

CircuitGraph parse_circuit(std::string_view text) {
    CircuitGraph graph;
    SourceLines lines;
    bool have_postselect = false;

    for (Line &line : tokenize(text)) {
        const int n = line.number();
        std::string kw = line.keyword(
            {"source", "hwp", "rotate", "pbs", "analyzer", "delay", "detector", "output", "postselect", "overlap", "scan"},
            "statement keyword");
        std::optional<Stage> stage;
        if (kw == "source") {
            stage = SourceStage{parse_source(line)};
        } else if (kw == "hwp") {
            HwpStage s;
            s.port = line.identifier("port name");
            s.plate_angle_deg = line.number("plate angle in degrees");
            stage = s;
        } else if (kw == "rotate") {
            RotateStage s;
            s.port = line.identifier("port name");
            s.angle_deg = line.number("rotation angle in degrees");
            stage = s;
        } else if (kw == "pbs") {
            PbsStage s;
            s.port_a = line.identifier("port name");
            s.port_b = line.identifier("second port name");
            stage = s;
        } else if (kw == "analyzer") {
            AnalyzerStage s;
            s.port = line.identifier("port name");
            s.angle_deg = line.number("analyzer angle in degrees");
            stage = s;
        } else if (kw == "delay") {
            DelayStage s;
            s.port = line.identifier("port name");
            s.time = line.number("delay time");
            stage = s;
        } else if (kw == "detector") {
            DetectorSpec d;
            d.name = line.identifier("detector name");
            d.port = line.identifier("port name");
            if (!line.done() && line.peek()->text.find('=') == std::string::npos) {
                d.mode = line.keyword({"threshold", "pnr"}, "detector mode (threshold|pnr)") == "pnr"
                             ? DetectorMode::NumberResolving
                             : DetectorMode::Threshold;
            }
            Options o = Options::read(line, {"eff"});
            d.efficiency = o.number(line, "eff", 1);
            stage = DetectorStage{d};
        } else if (kw == "output") {
            do {
                graph.outputs.push_back(line.identifier("port name"));
                lines.output_lines.push_back(n);
            } while (!line.done());
        } else if (kw == "postselect") {
            if (have_postselect) {
                throw CircuitError(CircuitErrorKind::InvalidValue, n, 1, "only one postselect statement is allowed");
            }
            have_postselect = true;
            lines.postselect_line = n;
            do {
                const Token &t = line.next("detector name");
                auto eq = t.text.find('=');
                std::string name = t.text.substr(0, eq);
                int value = 1;
                if (!is_identifier(name)) {
                    throw CircuitError(CircuitErrorKind::SyntaxError, n, t.column, "expected detector name");
                }
                if (eq != std::string::npos) {
                    std::string v = t.text.substr(eq + 1);
                    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
                    if (ec != std::errc{} || ptr != v.data() + v.size()) {
                        throw CircuitError(
                            CircuitErrorKind::SyntaxError, n, t.column + static_cast<int>(eq) + 1, "expected integer count");
                    }
                }
                graph.coincidence.required.emplace_back(name, value);
            } while (!line.done());
        } else if (kw == "overlap") {
            std::string a = line.identifier("family name or 'default'");
            try {
                if (lower(a) == "default") {
                    double v = line.number("overlap factor");
                    line.end();
                    graph.families = [&] {
                        FamilyOverlaps f(v);
                        for (const auto &[pair, x] : graph.families.pairs()) {
                            f.set(pair.first, pair.second, x);
                        }
                        return f;
                    }();
                } else {
                    std::string b = line.identifier("second family name");
                    double v = line.number("overlap factor");
                    line.end();
                    graph.families.set(a, b, v);
                }
            } catch (const std::invalid_argument &e) {
                throw CircuitError(CircuitErrorKind::InvalidValue, n, 1, e.what());
            }
        } else if (kw == "scan") {
            if (graph.scan) {
                throw CircuitError(CircuitErrorKind::InvalidValue, n, 1, "only one scan statement is allowed");
            }
            ScanSpec s;
            s.kind = line.keyword({"delay", "analyzer"}, "scan target (delay|analyzer)") == "delay" ? ScanKind::Delay
                                                                                                     : ScanKind::Analyzer;
            s.port = line.identifier("port name");
            s.from = line.number("scan start");
            s.to = line.number("scan end");
            s.steps = line.integer("step count");
            graph.scan = s;
            lines.scan_line = n;
        }
        line.end();
        if (stage) {
            graph.stages.push_back(std::move(*stage));
            lines.stage_lines.push_back(n);
        }
        validate_graph(graph, lines, false);
    }
    validate_graph(graph, lines, true);
    return graph;
}

CircuitGraph parse_circuit_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open circuit file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_circuit(buf.str());
}

std::string format_number(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string serialize_circuit(const CircuitGraph &graph) {
    std::string out;
    auto f = format_number;
    for (const auto &stage : graph.stages) {
        if (auto *s = std::get_if<SourceStage>(&stage)) {
            const SourceSpec &spec = s->spec;
            switch (spec.kind) {
                case SourceKind::Vacuum:
                    out += "source vacuum " + spec.ports[0];
                    break;
                case SourceKind::Ideal:
                case SourceKind::Coherent: {
                    const PhotonWavepacket &w = spec.wavepackets[0];
                    if (spec.kind == SourceKind::Ideal) {
                        out += "source ideal " + spec.ports[0];
                    } else {
                        out += "source coherent " + spec.ports[0] + " mu=" + f(spec.mean_photons);
                    }
                    out += " angle=" + f(spec.angle_deg) + " sigma=" + f(w.width_sigma) + " t=" + f(w.center_time) +
                           " family=" + w.family;
                    break;
                }
                case SourceKind::SpdcPair: {
                    const PhotonWavepacket &w1 = spec.wavepackets[0];
                    const PhotonWavepacket &w2 = spec.wavepackets[1];
                    out += "source spdc " + spec.ports[0] + " " + spec.ports[1] + " p=" + f(spec.pair_prob) +
                           " angle=" + f(spec.angle_deg) + " sigma1=" + f(w1.width_sigma) + " sigma2=" + f(w2.width_sigma) +
                           " t1=" + f(w1.center_time) + " t2=" + f(w2.center_time) + " family1=" + w1.family +
                           " family2=" + w2.family;
                    break;
                }
            }
        } else if (auto *h = std::get_if<HwpStage>(&stage)) {
            out += "hwp " + h->port + " " + f(h->plate_angle_deg);
        } else if (auto *r = std::get_if<RotateStage>(&stage)) {
            out += "rotate " + r->port + " " + f(r->angle_deg);
        } else if (auto *p = std::get_if<PbsStage>(&stage)) {
            out += "pbs " + p->port_a + " " + p->port_b;
        } else if (auto *a = std::get_if<AnalyzerStage>(&stage)) {
            out += "analyzer " + a->port + " " + f(a->angle_deg);
        } else if (auto *d = std::get_if<DelayStage>(&stage)) {
            out += "delay " + d->port + " " + f(d->time);
        } else if (auto *det = std::get_if<DetectorStage>(&stage)) {
            const DetectorSpec &d = det->detector;
            out += "detector " + d.name + " " + d.port + (d.mode == DetectorMode::Threshold ? " threshold" : " pnr") +
                   " eff=" + f(d.efficiency);
        }
        out += "\n";
    }
    if (!graph.outputs.empty()) {
        out += "output";
        for (const auto &port : graph.outputs) {
            out += " " + port;
        }
        out += "\n";
    }
    if (!graph.coincidence.required.empty()) {
        out += "postselect";
        for (const auto &[name, value] : graph.coincidence.required) {
            out += " " + name + "=" + std::to_string(value);
        }
        out += "\n";
    }
    if (graph.families.default_cross() != 1) {
        out += "overlap default " + f(graph.families.default_cross()) + "\n";
    }
    for (const auto &[pair, value] : graph.families.pairs()) {
        out += "overlap " + pair.first + " " + pair.second + " " + f(value) + "\n";
    }
    if (graph.scan) {
        const ScanSpec &s = *graph.scan;
        out += std::string("scan ") + (s.kind == ScanKind::Delay ? "delay " : "analyzer ") + s.port + " " + f(s.from) + " " +
               f(s.to) + " " + std::to_string(s.steps) + "\n";
    }
    return out;
}

}  // namespace xorsim
