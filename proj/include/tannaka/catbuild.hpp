#pragma once

#include "tannaka/category.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>

namespace tannaka {

// Incremental construction of a CategoryPresentation with all tables
// allocated to the right shapes.  Coherence arrows default to identities,
// which is only consistent for label-strict tensors; non-strict input
// overrides them explicitly.
class CategoryBuilder {
public:
    CategoryBuilder(FieldSpec field, std::vector<std::string> objects, const std::string& unit) {
        c_.field = field;
        c_.objects = std::move(objects);
        for (std::size_t i = 0; i < c_.objects.size(); ++i) index_[c_.objects[i]] = i;
        c_.unit = obj(unit);
        const std::size_t n = c_.objects.size();
        c_.hom_dims.assign(n, std::vector<std::size_t>(n, 0));
    }

    std::size_t obj(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw std::invalid_argument("unknown object '" + name + "'");
        return it->second;
    }

    void hom(const std::string& a, const std::string& b, std::size_t dim) {
        c_.hom_dims[obj(a)][obj(b)] = dim;
    }

    // allocate composition/identity tables once hom dimensions are final
    void alloc_compose() {
        const std::size_t n = c_.objects.size();
        c_.compose_tab.assign(n, std::vector<std::vector<Matrix>>(n, std::vector<Matrix>(n)));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t cc = 0; cc < n; ++cc)
                    c_.compose_tab[a][b][cc] =
                        Matrix(c_.hom_dims[a][cc], c_.hom_dims[b][cc] * c_.hom_dims[a][b]);
        c_.identities.resize(n);
        for (std::size_t a = 0; a < n; ++a) c_.identities[a] = Matrix(c_.hom_dims[a][a], 1);
    }

    // coords of basis_g o basis_f for f in hom(a,b), g in hom(b,c)
    void compose_entry(std::size_t a, std::size_t b, std::size_t cc, std::size_t gi, std::size_t fi,
                       const Matrix& coords) {
        Matrix& tab = c_.compose_tab[a][b][cc];
        for (std::size_t r = 0; r < coords.rows(); ++r)
            tab.at(r, gi * c_.hom_dims[a][b] + fi) = coords.at(r, 0);
    }

    void identity_coords(std::size_t a, const Matrix& coords) { c_.identities[a] = coords; }

    void tensor_obj_table(const std::vector<std::vector<std::size_t>>& t) {
        c_.has_tensor = true;
        c_.tensor_obj = t;
    }

    void alloc_tensor() {
        const std::size_t n = c_.objects.size();
        c_.tensor_tab.assign(
            n, std::vector<std::vector<std::vector<Matrix>>>(
                   n, std::vector<std::vector<Matrix>>(n, std::vector<Matrix>(n))));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t a2 = 0; a2 < n; ++a2)
                    for (std::size_t b2 = 0; b2 < n; ++b2)
                        c_.tensor_tab[a][b][a2][b2] =
                            Matrix(c_.hom_dims[c_.tensor(a, a2)][c_.tensor(b, b2)],
                                   c_.hom_dims[a][b] * c_.hom_dims[a2][b2]);
    }

    void tensor_entry(std::size_t a, std::size_t b, std::size_t a2, std::size_t b2, std::size_t fi,
                      std::size_t f2i, const Matrix& coords) {
        Matrix& tab = c_.tensor_tab[a][b][a2][b2];
        for (std::size_t r = 0; r < coords.rows(); ++r)
            tab.at(r, fi * c_.hom_dims[a2][b2] + f2i) = coords.at(r, 0);
    }

    // identity coherence arrows; valid when the object table is label-strict
    void default_coherence() {
        const std::size_t n = c_.objects.size();
        c_.alpha.assign(n, std::vector<std::vector<Arrow>>(n, std::vector<Arrow>(n)));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t cc = 0; cc < n; ++cc) {
                    std::size_t src = c_.tensor(a, c_.tensor(b, cc));
                    std::size_t dst = c_.tensor(c_.tensor(a, b), cc);
                    if (src != dst)
                        throw std::logic_error("default_coherence: object tensor not strictly associative");
                    c_.alpha[a][b][cc] = Arrow{src, dst, c_.identities[src]};
                }
        c_.lunit.resize(n);
        c_.runit.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            if (c_.tensor(c_.unit, a) != a || c_.tensor(a, c_.unit) != a)
                throw std::logic_error("default_coherence: unit not strict");
            c_.lunit[a] = Arrow{a, a, c_.identities[a]};
            c_.runit[a] = Arrow{a, a, c_.identities[a]};
        }
    }

    CategoryPresentation& raw() { return c_; }

    std::shared_ptr<CategoryPresentation> build() {
        return std::make_shared<CategoryPresentation>(c_);
    }

private:
    CategoryPresentation c_;
    std::map<std::string, std::size_t> index_;
};

} // namespace tannaka
