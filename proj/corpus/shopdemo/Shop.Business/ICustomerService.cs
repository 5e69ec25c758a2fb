using Shop.Data.Entities;

namespace Shop.Business
{
    public interface ICustomerService
    {
        Customer Register(string name, string email);
    }
}
