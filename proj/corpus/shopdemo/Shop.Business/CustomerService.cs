using Shop.Data;
using Shop.Data.Entities;

namespace Shop.Business
{
    public class CustomerService : ICustomerService
    {
        private ICustomerRepository repository = new CustomerRepository();

        public Customer Register(string name, string email)
        {
            Customer existing = repository.FindByEmail(email);
            if (existing != null)
            {
                return existing;
            }
            Customer created = new Customer(name, email);
            repository.Save(created);
            return created;
        }
    }
}
