using System;
using Shop.Business;
using Shop.Business.Messaging;
using Shop.Business.Rules;
using Shop.Data.Entities;

namespace Shop.Web.Controllers
{
    public class CustomerController : Controller
    {
        private ICustomerService customers;
        private NotificationService notifier;

        public CustomerController()
        {
            customers = new CustomerService();
            notifier = new NotificationService();
        }

        public int Register(string name, string email)
        {
            if (!EmailRules.IsValid(email))
            {
                return -1;
            }
            Customer customer = customers.Register(name, email);
            notifier.Welcome(customer).Send();
            return customer.Id;
        }
    }
}
