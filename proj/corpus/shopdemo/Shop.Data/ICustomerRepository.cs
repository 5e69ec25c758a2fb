using Shop.Data.Entities;

namespace Shop.Data
{
    public interface ICustomerRepository
    {
        Customer FindByEmail(string email);
        void Save(Customer customer);
    }
}
