#include "qmf/errors.hpp"
#include "qmf/wdvv.hpp"

namespace qmf {

namespace detail {
const std::map<std::string, std::string>& embedded_files();
}

const std::string& data_file(const std::string& name) {
    const auto& files = detail::embedded_files();
    auto it = files.find(name);
    if (it == files.end()) throw Error("MissingData", "no bundled file '" + name + "'");
    return it->second;
}

}  // namespace qmf
