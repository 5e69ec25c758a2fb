using System.Collections.Generic;
using Shop.Data.Entities;

namespace Shop.Data
{
    public class CustomerRepository : ICustomerRepository
    {
        private List<Customer> rows = new List<Customer>();

        public Customer FindByEmail(string email)
        {
            return rows.Find(c => c.Email == email);
        }

        public void Save(Customer customer)
        {
            rows.Add(customer);
        }
    }
}
