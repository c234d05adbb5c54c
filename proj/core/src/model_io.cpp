#include <fstream>
#include <sstream>

#include "dakit/common.hpp"
#include "dakit/svm.hpp"

namespace dakit {

namespace {
constexpr const char* kMagic = "dlsvm";
constexpr const char* kVersion = "v1";
}  // namespace

void save_model(const LinearModel& model, std::ostream& out) {
    out << kMagic << " " << kVersion << "\n";
    out << "classes " << model.n_classes() << " features " << model.n_features() << " bias "
        << format_double(model.bias()) << "\n";
    for (const auto& label : model.labels()) out << label << "\n";
    for (std::size_t c = 0; c < model.n_classes(); ++c) {
        out << c;
        auto w = model.class_weights(c);
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] == 0.0) continue;
            out << " " << i << ":" << format_double(w[i]);
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("model write failed");
}

void save_model(const LinearModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    save_model(model, out);
}

LinearModel load_model(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty model file");
    {
        auto parts = split(line, ' ');
        if (parts.size() != 2 || parts[0] != kMagic)
            throw ParseError("not a dlsvm model file", 1);
        if (parts[1] != kVersion)
            throw ParseError("unsupported model version `" + parts[1] + "` (expected v1)", 1);
    }
    if (!std::getline(in, line)) throw ParseError("truncated model file", 2);
    std::size_t n_classes = 0;
    std::uint32_t n_features = 0;
    double bias = 0.0;
    {
        std::istringstream hdr(line);
        std::string k1, k2, k3;
        hdr >> k1 >> n_classes >> k2 >> n_features >> k3 >> bias;
        if (!hdr || k1 != "classes" || k2 != "features" || k3 != "bias")
            throw ParseError("bad model header line", 2);
    }

    std::vector<std::string> labels(n_classes);
    std::size_t line_no = 2;
    for (std::size_t c = 0; c < n_classes; ++c) {
        if (!std::getline(in, labels[c])) throw ParseError("truncated model file", line_no + 1);
        ++line_no;
    }

    std::vector<std::vector<double>> weights(n_classes,
                                             std::vector<double>(n_features + 1, 0.0));
    for (std::size_t c = 0; c < n_classes; ++c) {
        if (!std::getline(in, line)) throw ParseError("truncated model file", line_no + 1);
        ++line_no;
        std::istringstream row(line);
        std::size_t row_class = 0;
        if (!(row >> row_class) || row_class != c)
            throw ParseError("weight rows out of order", line_no);
        std::string entry;
        while (row >> entry) {
            std::size_t colon = entry.find(':');
            if (colon == std::string::npos)
                throw ParseError("bad weight entry: " + entry, line_no);
            std::size_t id = std::stoul(entry.substr(0, colon));
            if (id > n_features) throw ParseError("weight id out of range", line_no);
            weights[c][id] = std::strtod(entry.c_str() + colon + 1, nullptr);
        }
    }
    return LinearModel(std::move(weights), std::move(labels), n_features, bias);
}

LinearModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    return load_model(in);
}

}  // namespace dakit
