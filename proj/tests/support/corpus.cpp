#include "corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace ordo::testing {

namespace {

constexpr const char* kIndent = "    ";

std::string make_word(std::mt19937_64& rng) {
  static const std::string consonants = "bdfklprvwz";
  static const std::string vowels = "aeou";
  const std::size_t syllables = 2 + rng() % 3;
  std::string w;
  for (std::size_t i = 0; i < syllables; ++i) {
    w += consonants[rng() % consonants.size()];
    w += vowels[rng() % vowels.size()];
  }
  return w;
}

std::vector<std::string> unique_words(std::mt19937_64& rng, std::set<std::string>& used,
                                      std::size_t n) {
  std::vector<std::string> out;
  while (out.size() < n) {
    std::string w = make_word(rng);
    if (used.insert(w).second) out.push_back(w);
  }
  return out;
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

void body(std::ostringstream& out, std::mt19937_64& rng, std::size_t lines, const std::string& tail) {
  for (std::size_t i = 0; i < lines; ++i) {
    out << kIndent << kIndent << "int v" << i << " = x * " << (rng() % 97 + 1) << " + " << i << ";\n";
  }
  out << kIndent << kIndent << tail << '\n';
}

std::string generate_class(const CorpusSpec& spec, std::size_t index, std::mt19937_64& rng) {
  std::ostringstream name;
  name << 'C';
  name.width(3);
  name.fill('0');
  name << index;
  const std::string cls = name.str();
  const std::size_t n = spec.per_region;

  std::set<std::string> used;
  auto statics = unique_words(rng, used, n);
  auto fields = unique_words(rng, used, n);
  auto publics = unique_words(rng, used, n);
  auto privates = unique_words(rng, used, n);
  std::sort(statics.begin(), statics.end());
  std::sort(fields.begin(), fields.end());
  std::sort(publics.begin(), publics.end());
  if (spec.order_private_methods) {
    std::sort(privates.begin(), privates.end());
  } else {
    std::shuffle(privates.begin(), privates.end(), rng);
  }

  std::ostringstream out;
  out << "package gen;\n\npublic class " << cls << " {";
  out << planted_prefix(0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out << '\n' << kIndent;
    out << "private static final int " << upper(statics[i]) << " = " << (rng() % 1000) << ';';
  }
  out << planted_prefix(1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out << '\n' << kIndent;
    out << "private int " << fields[i] << ';';
  }
  out << planted_prefix(2);
  const std::size_t ctors = spec.constructors ? spec.constructors : n;
  for (std::size_t i = 0; i < ctors; ++i) {
    if (i > 0) out << "\n\n" << kIndent;
    out << "public " << cls << '(';
    for (std::size_t p = 0; p < i; ++p) out << (p ? ", " : "") << "int p" << p;
    out << ") {\n";
    out << kIndent << kIndent << "this." << fields[i % fields.size()] << " = " << (i ? "p0" : "0")
        << ";\n";
    out << kIndent << '}';
  }
  out << planted_prefix(3);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out << "\n\n" << kIndent;
    out << "public int " << publics[i] << "(int x) {\n";
    body(out, rng, spec.body_lines, "return " + privates[rng() % n] + "(x);");
    out << kIndent << '}';
  }
  out << planted_prefix(4);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out << "\n\n" << kIndent;
    out << "private int " << privates[i] << "(int x) {\n";
    body(out, rng, spec.body_lines, "return x + " + upper(statics[rng() % n]) + ";");
    out << kIndent << '}';
  }
  if (spec.inner_class) {
    out << "\n\n" << kIndent << "private static class Helper {\n"
        << kIndent << kIndent << "private int value;\n\n"
        << kIndent << kIndent << "Helper(int value) {\n"
        << kIndent << kIndent << kIndent << "this.value = value;\n"
        << kIndent << kIndent << "}\n\n"
        << kIndent << kIndent << "int value() {\n"
        << kIndent << kIndent << kIndent << "return value;\n"
        << kIndent << kIndent << "}\n"
        << kIndent << '}';
  }
  out << "\n}\n";
  return out.str();
}

}  // namespace

const std::vector<std::string>& planted_headers() {
  static const std::vector<std::string> headers = {"// Static fields", "// Instance fields",
                                                   "// Constructors", "// Public methods",
                                                   "// Private methods"};
  return headers;
}

std::string planted_prefix(std::size_t i) {
  return std::string(i == 0 ? "\n" : "\n\n") + kIndent + planted_headers()[i] + "\n" + kIndent;
}

std::vector<GeneratedFile> generate_corpus(const CorpusSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<GeneratedFile> out;
  for (std::size_t i = 0; i < spec.files; ++i) {
    const std::string text = generate_class(spec, i, rng);
    std::ostringstream path;
    path << "gen/C";
    path.width(3);
    path.fill('0');
    path << i << ".java";
    out.push_back({path.str(), text});
  }
  return out;
}

void write_corpus(const std::filesystem::path& root, const std::vector<GeneratedFile>& files) {
  for (const auto& f : files) {
    const auto p = root / f.path;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << f.text;
  }
}

std::size_t line_count(const std::vector<GeneratedFile>& files) {
  std::size_t n = 0;
  for (const auto& f : files) n += static_cast<std::size_t>(std::count(f.text.begin(), f.text.end(), '\n'));
  return n;
}

}  // namespace ordo::testing
