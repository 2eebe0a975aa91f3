#include "freekernel/json_io.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace freekernel::json_io {

namespace {

json label_to_json(const kmatrix::Label& l) {
    if (l.index() == 0) return std::get<0>(l);
    return word_to_json(std::get<1>(l));
}

kmatrix::Label label_from_json(const json& j) {
    if (j.is_number_integer()) return kmatrix::Label{j.get<std::int64_t>()};
    if (j.is_array()) return kmatrix::Label{word_from_json(j)};
    throw std::invalid_argument("json: label must be an integer or a word array");
}

}  // namespace

json kernel_to_json(const kmatrix::KernelMatrix& K, std::optional<int> N) {
    json j;
    j["N"] = N ? json(*N) : json(nullptr);
    json labels = json::array();
    for (const auto& l : K.labels) labels.push_back(label_to_json(l));
    j["labels"] = std::move(labels);
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < K.size(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (Eigen::Index k = 0; k < K.size(); ++k) {
            rrow.push_back(K.entries(i, k).real());
            irow.push_back(K.entries(i, k).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

kmatrix::KernelMatrix kernel_from_json(const json& j) {
    if (!j.contains("labels") || !j.contains("re"))
        throw std::invalid_argument("json: kernel needs 'labels' and 're'");
    std::vector<kmatrix::Label> labels;
    for (const auto& l : j.at("labels")) labels.push_back(label_from_json(l));
    const auto n = static_cast<Eigen::Index>(labels.size());
    kmatrix::Matrix entries(n, n);
    const json& re = j.at("re");
    const json* im = j.contains("im") && !j.at("im").is_null() ? &j.at("im") : nullptr;
    if (static_cast<Eigen::Index>(re.size()) != n)
        throw std::invalid_argument("json: kernel 're' has the wrong row count");
    for (Eigen::Index i = 0; i < n; ++i) {
        const json& rrow = re.at(static_cast<std::size_t>(i));
        for (Eigen::Index k = 0; k < n; ++k) {
            const double rv = rrow.at(static_cast<std::size_t>(k)).get<double>();
            const double iv =
                im ? im->at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<double>()
                   : 0.0;
            entries(i, k) = kmatrix::cplx(rv, iv);
        }
    }
    return kmatrix::build_kernel(std::move(labels), std::move(entries));
}

std::optional<int> kernel_alphabet(const json& j) {
    if (!j.contains("N") || j.at("N").is_null()) return std::nullopt;
    return j.at("N").get<int>();
}

json params_to_json(const schur::SchurParameterTable& params) {
    json j;
    j["n"] = params.size();
    json gammas = json::array();
    for (int jj = 1; jj <= params.size(); ++jj) {
        for (int k = 0; k < jj; ++k) {
            const auto g = params.gamma(k, jj);
            gammas.push_back({{"k", k}, {"j", jj}, {"re", g.real()}, {"im", g.imag()}});
        }
    }
    j["gamma"] = std::move(gammas);
    json degen = json::array();
    for (const auto& [k, jj] : params.degenerate_pairs()) degen.push_back({k, jj});
    j["degenerate"] = std::move(degen);
    return j;
}

schur::SchurParameterTable params_from_json(const json& j) {
    schur::SchurParameterTable params(j.at("n").get<int>());
    if (j.contains("gamma"))
        for (const auto& e : j.at("gamma"))
            params.set_gamma(e.at("k").get<int>(), e.at("j").get<int>(),
                             {e.at("re").get<double>(), e.at("im").get<double>()});
    if (j.contains("degenerate"))
        for (const auto& e : j.at("degenerate"))
            params.set_degenerate(e.at(0).get<int>(), e.at(1).get<int>());
    return params;
}

json moments_to_json(const invariant::ToeplitzMoments& m) {
    json c = json::array();
    for (const auto& v : m.c) c.push_back({v.real(), v.imag()});
    return json{{"c", std::move(c)}};
}

invariant::ToeplitzMoments moments_from_json(const json& j) {
    std::vector<kmatrix::cplx> c;
    for (const auto& e : j.at("c")) {
        if (e.is_array())
            c.emplace_back(e.at(0).get<double>(), e.size() > 1 ? e.at(1).get<double>() : 0.0);
        else
            c.emplace_back(e.get<double>(), 0.0);
    }
    return invariant::ToeplitzMoments(std::move(c));
}

json word_to_json(const words::Word& w) {
    json j = json::array();
    for (int l : w) j.push_back(l);
    return j;
}

words::Word word_from_json(const json& j) {
    words::Word w;
    for (const auto& e : j) w.push_back(e.get<int>());
    return w;
}

kmatrix::cplx parse_complex(const std::string& text) {
    // grammar: [sign] number [sign number 'i'] | [sign] number 'i' | [sign] 'i'
    const char* p = text.c_str();
    auto skip_ws = [&] { while (std::isspace(static_cast<unsigned char>(*p))) ++p; };
    auto read_signed = [&](double& out, bool& bare_i) -> bool {
        bare_i = false;
        double sign = 1.0;
        if (*p == '+' || *p == '-') sign = (*p++ == '-') ? -1.0 : 1.0;
        if (*p == 'i') {
            out = sign;
            bare_i = true;
            ++p;
            return true;
        }
        if (!std::isdigit(static_cast<unsigned char>(*p)) && *p != '.') return false;
        char* end = nullptr;
        const double v = std::strtod(p, &end);
        if (end == p) return false;
        p = end;
        out = sign * v;
        return true;
    };
    skip_ws();
    double first = 0.0;
    bool first_bare_i = false;
    if (!read_signed(first, first_bare_i))
        throw std::invalid_argument("complex: cannot parse '" + text + "'");
    double re = 0.0, im = 0.0;
    if (first_bare_i) {
        im = first;
    } else if (*p == 'i') {
        ++p;
        im = first;
    } else if (*p == '+' || *p == '-') {
        re = first;
        double second = 0.0;
        bool second_bare_i = false;
        if (!read_signed(second, second_bare_i))
            throw std::invalid_argument("complex: cannot parse '" + text + "'");
        if (!second_bare_i) {
            if (*p != 'i') throw std::invalid_argument("complex: imaginary part needs 'i'");
            ++p;
        }
        im = second;
    } else {
        re = first;
    }
    skip_ws();
    if (*p != '\0') throw std::invalid_argument("complex: trailing characters in '" + text + "'");
    return {re, im};
}

std::vector<kmatrix::cplx> parse_complex_list(const std::string& text) {
    std::vector<kmatrix::cplx> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string item =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        out.push_back(parse_complex(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

words::Word parse_word(const std::string& text) {
    if (text.empty()) return {};
    if (text.front() == '[') return word_from_json(json::parse(text));
    words::Word w;
    for (char c : text) {
        if (c < '1' || c > '9')
            throw std::invalid_argument("word: compact form uses digits 1..9 only");
        w.push_back(c - '0');
    }
    return w;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace freekernel::json_io
