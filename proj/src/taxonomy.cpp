#include "relex/taxonomy.hpp"

#include <fstream>
#include <sstream>

#include "relex/errors.hpp"

namespace relex {

void Taxonomy::add_class(const std::string& child, const std::string& parent) {
    auto it = parent_.find(child);
    if (it != parent_.end() && !it->second.empty() && it->second != parent)
        throw DataError("class '" + child + "' declared with two parents");
    parent_[child] = parent;
    if (!parent_.count(parent)) parent_[parent] = "";  // implicit root until declared
}

void Taxonomy::add_synonym(const std::string& synonym, const std::string& cls) {
    if (!parent_.count(cls)) throw DataError("synonym '" + synonym + "' maps to unknown class '" + cls + "'");
    synonym_[synonym] = cls;
}

void Taxonomy::validate() {
    if (parent_.empty()) return;  // no ontology supplied
    std::vector<std::string> roots;
    for (const auto& [cls, parent] : parent_)
        if (parent.empty()) roots.push_back(cls);
    if (roots.size() != 1)
        throw DataError("taxonomy must have exactly one root, found " + std::to_string(roots.size()));
    for (const auto& [cls, _] : parent_) {
        std::set<std::string> seen;
        std::string cur = cls;
        while (!cur.empty()) {
            if (!seen.insert(cur).second) throw DataError("taxonomy cycle through '" + cur + "'");
            cur = parent_.at(cur);
        }
    }
    root_ = roots[0];
}

bool Taxonomy::has_class(const std::string& cls) const { return parent_.count(cls) != 0; }

std::string Taxonomy::resolve(const std::string& label) const {
    if (parent_.count(label)) return label;
    auto it = synonym_.find(label);
    if (it != synonym_.end()) return it->second;
    throw DataError("unknown taxonomy class '" + label + "'");
}

std::vector<std::string> Taxonomy::ancestors(const std::string& cls) const {
    auto it = parent_.find(cls);
    if (it == parent_.end()) throw DataError("unknown taxonomy class '" + cls + "'");
    std::vector<std::string> out;
    std::string cur = it->second;
    while (!cur.empty()) {
        out.push_back(cur);
        cur = parent_.at(cur);
    }
    return out;
}

Taxonomy parse_taxonomy(const std::string& text) {
    Taxonomy t;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    bool synonyms = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.rfind("%% synonyms", 0) == 0) {
            synonyms = true;
            continue;
        }
        auto cut = line.find('%');
        if (cut != std::string::npos) line = line.substr(0, cut);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError("expected two tab-separated columns", line_no);
        std::string a = line.substr(0, tab);
        std::string b = line.substr(tab + 1);
        if (a.empty() || b.empty()) throw ParseError("empty column", line_no);
        try {
            if (synonyms) t.add_synonym(a, b);
            else t.add_class(a, b);
        } catch (const DataError& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    t.validate();
    return t;
}

Taxonomy load_taxonomy(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open taxonomy file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_taxonomy(ss.str());
}

}  // namespace relex
